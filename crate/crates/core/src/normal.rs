//! Canonical representatives, the isotopy decision, the double-cover lift,
//! and the Seifert classification.
//!
//! The normal form of a triple is found by greedy reduction: look through
//! the (at most four element) orbit of the current triple under moves 1 and 2
//! for a forward move 3 or 4, take the one with the lexicographically least
//! result, and repeat. Each reduction raises `n`, so at most two happen. At a
//! triple with no reduction left, the lexicographically least `(p, q)` of the
//! orbit is returned.

use serde::{Deserialize, Serialize};

use crate::link::{AmbientSpace, LinkError, TorusLink};
use crate::relation::{apply_relation, Direction, Relation, RelationStep, WitnessChain};

/// The orbit of `link` under moves 1 and 2, each member paired with a chain
/// reaching it from `link`. The first entry is `link` itself.
pub fn symmetry_orbit(link: &TorusLink) -> Vec<(TorusLink, WitnessChain)> {
    let mut orbit = vec![(*link, WitnessChain::new())];
    let mut i = 0;
    while i < orbit.len() {
        let (current, path) = orbit[i].clone();
        for relation in [Relation::R1, Relation::R2] {
            // Orbit members are at most triple the start, which stays in
            // range for constructed links.
            let Ok(step) = apply_relation(&current, relation, Direction::Forward) else {
                continue;
            };
            if orbit.iter().all(|(t, _)| *t != step.after) {
                let mut next = path.clone();
                next.push(step);
                orbit.push((step.after, next));
            }
        }
        i += 1;
    }
    orbit
}

/// The cheapest reduction reachable through the symmetry orbit.
fn best_reduction(link: &TorusLink) -> Option<(WitnessChain, RelationStep)> {
    let mut best: Option<(WitnessChain, RelationStep)> = None;
    for (member, path) in symmetry_orbit(link) {
        for relation in [Relation::R3, Relation::R4] {
            let Ok(step) = apply_relation(&member, relation, Direction::Forward) else {
                continue;
            };
            let better = match &best {
                None => true,
                Some((best_path, best_step)) => {
                    (step.after.key(), path.len()) < (best_step.after.key(), best_path.len())
                }
            };
            if better {
                best = Some((path.clone(), step));
            }
        }
    }
    best
}

pub fn normal_form(link: &TorusLink) -> (TorusLink, WitnessChain) {
    let mut chain = WitnessChain::new();
    let mut current = *link;
    while let Some((path, step)) = best_reduction(&current) {
        chain.extend(path);
        chain.push(step);
        current = step.after;
    }
    let (least, path) = symmetry_orbit(&current)
        .into_iter()
        .min_by_key(|(t, path)| ((t.p, t.q), path.len()))
        .expect("orbit contains its start");
    chain.extend(path);
    (least, chain)
}

/// Decides isotopy by comparing normal forms. A positive answer comes with
/// a chain from `a` to `b`.
pub fn isotopic(a: &TorusLink, b: &TorusLink) -> Result<(bool, Option<WitnessChain>), LinkError> {
    if a.space != b.space {
        return Err(LinkError::SpaceMismatch(a.space, b.space));
    }
    let (nf_a, mut chain) = normal_form(a);
    let (nf_b, chain_b) = normal_form(b);
    if nf_a != nf_b {
        return Ok((false, None));
    }
    chain.extend(chain_b.reversed());
    Ok((true, Some(chain)))
}

/// Preimage of a projective torus link under the double cover `S3 → RP3`:
/// `T_RP3(p, q; n)` lifts to `T_S3(p, -p + 2q; n)`.
pub fn lift(link: &TorusLink) -> Result<TorusLink, LinkError> {
    if link.space != AmbientSpace::Projective {
        return Err(LinkError::WrongSpace(*link));
    }
    let q = i64::try_from(2 * i128::from(link.q) - i128::from(link.p))
        .map_err(|_| LinkError::Overflow(*link))?;
    Ok(TorusLink {
        space: AmbientSpace::Sphere,
        p: link.p,
        q,
        n: link.n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassificationKind {
    Empty,
    SeifertComplement,
    NonSeifertSplit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: ClassificationKind,
    pub detail: String,
}

/// The complement of `T_*(p, q; n)` is Seifert fibered unless the link is
/// empty, or isotopic to `T_*(0, c; 0)` with `c ≥ 2`, or (in RP3) to
/// `T_RP3(2c, c; 1)` with `c ≥ 1`; the last two are split.
///
/// The component count is a class invariant, so only one member of each
/// exceptional family can share a class with `link`.
pub fn classify(link: &TorusLink) -> Classification {
    let (nf, _) = normal_form(link);
    let empty = link.with(0, 0, 0);
    if nf == empty {
        return Classification {
            kind: ClassificationKind::Empty,
            detail: format!("isotopic to the empty link {empty}"),
        };
    }
    let c = link.component_count() as i64;
    if c >= 2 {
        let unlink = link.with(0, c, 0);
        if normal_form(&unlink).0 == nf {
            return Classification {
                kind: ClassificationKind::NonSeifertSplit,
                detail: format!("isotopic to {unlink}, a split link"),
            };
        }
        if link.space == AmbientSpace::Projective {
            let m = c - 1;
            let family = link.with(2 * m, m, 1);
            if normal_form(&family).0 == nf {
                return Classification {
                    kind: ClassificationKind::NonSeifertSplit,
                    detail: format!("isotopic to {family}, a split link"),
                };
            }
        }
    }
    Classification {
        kind: ClassificationKind::SeifertComplement,
        detail: format!("complement is Seifert fibered; normal form {nf}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3(p: i64, q: i64, n: i64) -> TorusLink {
        TorusLink::sphere(p, q, n).unwrap()
    }

    fn rp3(p: i64, q: i64, n: i64) -> TorusLink {
        TorusLink::projective(p, q, n).unwrap()
    }

    fn nf(t: TorusLink) -> TorusLink {
        let (out, chain) = normal_form(&t);
        assert!(chain.verify(&t, &out), "bad witness for {t}");
        out
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(symmetry_orbit(&s3(2, 3, 0)).len(), 4);
        assert_eq!(symmetry_orbit(&s3(2, 2, 0)).len(), 2);
        assert_eq!(symmetry_orbit(&s3(2, 3, 1)).len(), 2);
        assert_eq!(symmetry_orbit(&s3(0, 0, 0)).len(), 1);
        assert_eq!(symmetry_orbit(&rp3(1, 3, 2)).len(), 4);
        for (member, path) in symmetry_orbit(&rp3(1, 3, 2)) {
            assert!(path.verify(&rp3(1, 3, 2), &member));
        }
    }

    #[test]
    fn hopf_chain() {
        let (out, chain) = normal_form(&s3(2, -2, 0));
        assert_eq!(out, nf(s3(0, 0, 2)));
        assert!(chain.len() >= 2);
        for t in [s3(2, 2, 0), s3(1, 1, 1), s3(1, -1, 1), s3(0, 0, 2)] {
            assert_eq!(nf(t), out);
        }
    }

    #[test]
    fn unknot_family() {
        assert_eq!(nf(s3(1, 7, 0)), nf(s3(0, 0, 1)));
    }

    #[test]
    fn projective_third_bullet() {
        assert_eq!(nf(rp3(4, 0, 0)), nf(rp3(2, 0, 2)));
    }

    #[test]
    fn idempotent() {
        let once = nf(s3(9, 6, 1));
        assert_eq!(nf(once), once);
    }

    #[test]
    fn isotopy_verdicts() {
        let (yes, chain) = isotopic(&s3(3, 5, 0), &s3(5, 3, 0)).unwrap();
        assert!(yes);
        assert!(chain.unwrap().verify(&s3(3, 5, 0), &s3(5, 3, 0)));

        let (yes, chain) = isotopic(&rp3(3, 3, 0), &rp3(1, 1, 2)).unwrap();
        assert!(yes);
        assert!(chain.unwrap().verify(&rp3(3, 3, 0), &rp3(1, 1, 2)));

        assert_eq!(isotopic(&s3(2, 3, 0), &s3(2, 5, 0)).unwrap(), (false, None));
    }

    #[test]
    fn mismatched_spaces() {
        assert_eq!(
            isotopic(&s3(1, 1, 0), &rp3(1, 1, 0)),
            Err(LinkError::SpaceMismatch(
                AmbientSpace::Sphere,
                AmbientSpace::Projective
            ))
        );
    }

    #[test]
    fn lift_formula() {
        assert_eq!(lift(&rp3(1, 1, 0)).unwrap(), s3(1, 1, 0));
        assert_eq!(lift(&rp3(0, 1, 0)).unwrap(), s3(0, 2, 0));
        assert_eq!(lift(&rp3(2, 1, 1)).unwrap(), s3(2, 0, 1));
        assert!(matches!(lift(&s3(2, 1, 1)), Err(LinkError::WrongSpace(_))));
    }

    #[test]
    fn classification_examples() {
        use ClassificationKind::*;
        assert_eq!(classify(&s3(0, 2, 0)).kind, NonSeifertSplit);
        assert_eq!(classify(&rp3(2, 1, 1)).kind, NonSeifertSplit);
        assert_eq!(classify(&s3(2, 3, 0)).kind, SeifertComplement);
        assert_eq!(classify(&s3(0, 0, 0)).kind, Empty);
        assert_eq!(classify(&rp3(0, 0, 0)).kind, Empty);
        // Unknots and key-chain links are Seifert.
        assert_eq!(classify(&s3(0, 1, 0)).kind, SeifertComplement);
        assert_eq!(classify(&s3(0, 3, 1)).kind, SeifertComplement);
        assert_eq!(classify(&rp3(0, 3, 2)).kind, SeifertComplement);
        // Members of the split families reached through other triples.
        assert_eq!(classify(&s3(4, 0, 1)).kind, NonSeifertSplit);
        assert_eq!(classify(&rp3(-6, -3, 1)).kind, NonSeifertSplit);
        assert_eq!(classify(&rp3(0, -4, 0)).kind, NonSeifertSplit);
        // (2q, q; 1) is only exceptional in RP3.
        assert_eq!(classify(&s3(4, 2, 1)).kind, SeifertComplement);
    }
}
