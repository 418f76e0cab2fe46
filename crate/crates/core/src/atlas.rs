//! Bounded universes of triples, their partition into isotopy classes, and
//! the exhaustive verifiers.
//!
//! The universe of bound `B` is every triple with `|p|, |q| ≤ B` and
//! `n ∈ {0, 1, 2}`, ordered lexicographically on `(p, q, n)`. Normal forms
//! are the class keys. The move closure computed by union-find is an
//! independent cross-check; it runs over a universe three times wider, which
//! contains every reduction path that starts in the inner universe.
//!
//! Work is spread over the global rayon pool. Results are collected in
//! universe order, so reports do not depend on the worker count.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::link::{AmbientSpace, TorusLink};
use crate::normal::{isotopic, lift, normal_form};
use crate::relation::{applicable_relations, apply_relation};
use crate::union_find::UnionFind;

/// Widening factor between the reporting universe and the closure universe.
pub const CLOSURE_FACTOR: u32 = 3;

/// All triples with `|p|, |q| ≤ bound`, in `(p, q, n)` order.
pub fn universe(space: AmbientSpace, bound: u32) -> Vec<TorusLink> {
    let b = i64::from(bound);
    let mut out = Vec::with_capacity(universe_len(bound));
    for p in -b..=b {
        for q in -b..=b {
            for n in 0..3u8 {
                out.push(TorusLink { space, p, q, n });
            }
        }
    }
    out
}

fn universe_len(bound: u32) -> usize {
    let side = 2 * bound as usize + 1;
    side * side * 3
}

/// Position of `t` in `universe(_, bound)`, or `None` if it lies outside.
fn universe_index(t: &TorusLink, bound: u32) -> Option<usize> {
    let b = i64::from(bound);
    if t.p.abs() > b || t.q.abs() > b {
        return None;
    }
    let side = 2 * b + 1;
    Some((((t.p + b) * side + (t.q + b)) * 3 + i64::from(t.n)) as usize)
}

/// A partition into classes, each sorted, the classes sorted by their least
/// member. Two partitions of the same set are equal iff their canonical
/// forms are equal.
pub type Partition = Vec<Vec<TorusLink>>;

fn canonical(mut classes: Vec<Vec<TorusLink>>) -> Partition {
    for class in &mut classes {
        class.sort();
    }
    classes.sort();
    classes
}

/// Restricts `partition` to triples with `|p|, |q| ≤ bound`.
pub fn restrict(partition: &Partition, bound: u32) -> Partition {
    let b = i64::from(bound);
    canonical(
        partition
            .iter()
            .map(|class| {
                class
                    .iter()
                    .copied()
                    .filter(|t| t.p.abs() <= b && t.q.abs() <= b)
                    .collect::<Vec<_>>()
            })
            .filter(|class| !class.is_empty())
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atlas {
    pub space: AmbientSpace,
    pub bound: u32,
    /// Normal form to its members in the universe, members sorted.
    pub classes: BTreeMap<TorusLink, Vec<TorusLink>>,
}

impl Atlas {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, t: &TorusLink) -> Option<&TorusLink> {
        self.classes
            .iter()
            .find(|(_, members)| members.binary_search(t).is_ok())
            .map(|(key, _)| key)
    }

    pub fn partition(&self) -> Partition {
        canonical(self.classes.values().cloned().collect())
    }
}

impl Serialize for Atlas {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Class<'a> {
            normal_form: &'a TorusLink,
            members: &'a [TorusLink],
        }
        let classes: Vec<Class> = self
            .classes
            .iter()
            .map(|(normal_form, members)| Class {
                normal_form,
                members,
            })
            .collect();
        let mut s = serializer.serialize_struct("Atlas", 3)?;
        s.serialize_field("space", &self.space)?;
        s.serialize_field("bound", &self.bound)?;
        s.serialize_field("classes", &classes)?;
        s.end()
    }
}

fn normal_forms(members: &[TorusLink]) -> Vec<TorusLink> {
    members.par_iter().map(|t| normal_form(t).0).collect()
}

fn group_by_key(members: &[TorusLink], keys: &[TorusLink]) -> BTreeMap<TorusLink, Vec<TorusLink>> {
    let mut classes: BTreeMap<TorusLink, Vec<TorusLink>> = BTreeMap::new();
    for (t, key) in members.iter().zip(keys) {
        classes.entry(*key).or_default().push(*t);
    }
    // Members arrive in universe order, which is already sorted.
    classes
}

pub fn enumerate_classes(space: AmbientSpace, bound: u32) -> Atlas {
    let members = universe(space, bound);
    let keys = normal_forms(&members);
    Atlas {
        space,
        bound,
        classes: group_by_key(&members, &keys),
    }
}

/// Equivalence closure of `universe(space, outer)` under every applicable
/// move whose other endpoint also lies in it, restricted to
/// `universe(space, inner)`. Does not use normal forms.
pub fn move_closure(space: AmbientSpace, inner: u32, outer: u32) -> Partition {
    let all = universe(space, outer);
    let mut uf = UnionFind::new(all.len());
    for (i, t) in all.iter().enumerate() {
        for (relation, direction) in applicable_relations(t) {
            let Ok(step) = apply_relation(t, relation, direction) else {
                continue;
            };
            if let Some(j) = universe_index(&step.after, outer) {
                uf.union(i, j);
            }
        }
    }
    let mut classes: BTreeMap<usize, Vec<TorusLink>> = BTreeMap::new();
    for t in universe(space, inner.min(outer)) {
        let i = universe_index(&t, outer).unwrap();
        classes.entry(uf.find(i)).or_default().push(t);
    }
    canonical(classes.into_values().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub a: TorusLink,
    pub b: TorusLink,
    pub evidence: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub bound: u32,
    pub checked_pairs: u64,
    pub violations: Vec<Violation>,
    pub elapsed: Duration,
    /// Longest witness chain produced while checking, when the verifier
    /// records chains.
    pub max_witness_length: Option<usize>,
}

impl VerificationReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    /// The same report with the wall-clock time zeroed, for byte-stable
    /// output.
    pub fn without_timing(&self) -> Self {
        VerificationReport {
            elapsed: Duration::ZERO,
            ..self.clone()
        }
    }

    /// Merges reports over the same bound, such as one per ambient space.
    pub fn combine(reports: impl IntoIterator<Item = VerificationReport>) -> Self {
        let mut out = VerificationReport {
            bound: 0,
            checked_pairs: 0,
            violations: Vec::new(),
            elapsed: Duration::ZERO,
            max_witness_length: None,
        };
        for r in reports {
            out.bound = out.bound.max(r.bound);
            out.checked_pairs += r.checked_pairs;
            out.violations.extend(r.violations);
            out.elapsed += r.elapsed;
            out.max_witness_length = out.max_witness_length.max(r.max_witness_length);
        }
        out
    }
}

impl Serialize for VerificationReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(None)?;
        m.serialize_entry("bound", &self.bound)?;
        m.serialize_entry("checked_pairs", &self.checked_pairs)?;
        m.serialize_entry("elapsed_ms", &(self.elapsed.as_millis() as u64))?;
        if let Some(len) = self.max_witness_length {
            m.serialize_entry("max_witness_length", &len)?;
        }
        m.serialize_entry("violations", &self.violations)?;
        m.end()
    }
}

fn pair_count(n: usize) -> u64 {
    let n = n as u64;
    n * n.saturating_sub(1) / 2
}

/// For every group of `members` sharing a `by` key, reports one pair per
/// extra distinct `against` key found inside the group.
fn split_groups(
    members: &[TorusLink],
    by: &[TorusLink],
    against: &[TorusLink],
    describe: impl Fn(&TorusLink, &TorusLink, &TorusLink) -> String,
) -> Vec<Violation> {
    let mut groups: BTreeMap<TorusLink, BTreeMap<TorusLink, TorusLink>> = BTreeMap::new();
    for ((t, b), a) in members.iter().zip(by).zip(against) {
        groups.entry(*b).or_default().entry(*a).or_insert(*t);
    }
    let mut out = Vec::new();
    for (key, reps) in groups {
        let mut reps = reps.into_iter();
        let Some((first_key, first)) = reps.next() else {
            continue;
        };
        for (other_key, other) in reps {
            out.push(Violation {
                a: first,
                b: other,
                evidence: describe(&key, &first_key, &other_key),
            });
        }
    }
    out.sort_by_key(|v| (v.a, v.b));
    out
}

/// Cross-checks the normal-form partition of `universe(space, bound)`
/// against the move closure of the universe of radius `3 * bound`.
pub fn confluence_audit(space: AmbientSpace, bound: u32) -> VerificationReport {
    let start = Instant::now();
    let outer = bound * CLOSURE_FACTOR;
    let members = universe(space, bound);
    let keys = normal_forms(&members);

    let closure = move_closure(space, bound, outer);
    let mut roots = vec![members[0]; members.len()];
    for class in &closure {
        for t in class {
            roots[universe_index(t, bound).unwrap()] = class[0];
        }
    }

    let mut violations = split_groups(&members, &roots, &keys, |root, a, b| {
        format!("connected by moves (class of {root}) but normal forms {a} and {b} differ")
    });
    violations.extend(split_groups(&members, &keys, &roots, |nf, a, b| {
        format!(
            "share normal form {nf} but are not connected by moves within radius {outer} \
             (classes of {a} and {b})"
        )
    }));

    VerificationReport {
        bound,
        checked_pairs: pair_count(members.len()),
        violations,
        elapsed: start.elapsed(),
        max_witness_length: None,
    }
}

/// Checks, for all projective triples in the universe, that isotopic lifts
/// imply isotopic links, and the converse.
pub fn verify_lift_injectivity(bound: u32) -> VerificationReport {
    let start = Instant::now();
    let members = universe(AmbientSpace::Projective, bound);
    let downstairs = normal_forms(&members);
    let upstairs: Vec<TorusLink> = members
        .par_iter()
        .map(|t| normal_form(&lift(t).expect("projective triple")).0)
        .collect();

    let mut violations = split_groups(&members, &upstairs, &downstairs, |up, a, b| {
        format!("lifts are isotopic (S3 normal form {up}) but RP3 normal forms {a} and {b} differ")
    });
    violations.extend(split_groups(
        &members,
        &downstairs,
        &upstairs,
        |down, a, b| {
            format!(
                "isotopic in RP3 (normal form {down}) but lifts have S3 normal forms {a} and {b}"
            )
        },
    ));

    VerificationReport {
        bound,
        checked_pairs: pair_count(members.len()),
        violations,
        elapsed: start.elapsed(),
        max_witness_length: None,
    }
}

/// Checks every applicable move on every projective triple in the universe:
/// the lifted endpoints must be isotopic in S3 with a replayable witness.
/// `checked_pairs` counts move instances.
pub fn relation_lift_compatibility(bound: u32) -> VerificationReport {
    let start = Instant::now();
    let members = universe(AmbientSpace::Projective, bound);
    let results: Vec<(u64, usize, Vec<Violation>)> = members
        .par_iter()
        .map(|t| {
            let mut checked = 0;
            let mut longest = 0;
            let mut bad = Vec::new();
            for (relation, direction) in applicable_relations(t) {
                let step = apply_relation(t, relation, direction).expect("listed as applicable");
                let (a, b) = (lift(&step.before).unwrap(), lift(&step.after).unwrap());
                checked += 1;
                match isotopic(&a, &b) {
                    Ok((true, Some(chain))) if chain.verify(&a, &b) => {
                        longest = longest.max(chain.len());
                    }
                    Ok((true, _)) => bad.push(Violation {
                        a: step.before,
                        b: step.after,
                        evidence: format!(
                            "{relation} {direction}: witness for {a} ~ {b} does not replay"
                        ),
                    }),
                    _ => bad.push(Violation {
                        a: step.before,
                        b: step.after,
                        evidence: format!(
                            "{relation} {direction}: lifts {a} and {b} are not isotopic"
                        ),
                    }),
                }
            }
            (checked, longest, bad)
        })
        .collect();

    let mut report = VerificationReport {
        bound,
        checked_pairs: 0,
        violations: Vec::new(),
        elapsed: Duration::ZERO,
        max_witness_length: Some(0),
    };
    for (checked, longest, bad) in results {
        report.checked_pairs += checked;
        report.max_witness_length = report.max_witness_length.max(Some(longest));
        report.violations.extend(bad);
    }
    report.elapsed = start.elapsed();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn universe_indexing_round_trips() {
        let u = universe(AmbientSpace::Sphere, 3);
        assert_eq!(u.len(), universe_len(3));
        for (i, t) in u.iter().enumerate() {
            assert_eq!(universe_index(t, 3), Some(i));
        }
        assert!(u.windows(2).all(|w| w[0] < w[1]));
        let outside = TorusLink::sphere(4, 0, 0).unwrap();
        assert_eq!(universe_index(&outside, 3), None);
    }

    #[test]
    fn degenerate_bound() {
        let atlas = enumerate_classes(AmbientSpace::Sphere, 0);
        assert_eq!(atlas.class_count(), 3);
        let report = confluence_audit(AmbientSpace::Sphere, 0);
        assert_eq!(report.checked_pairs, 3);
        assert!(report.holds());
        let report = verify_lift_injectivity(0);
        assert_eq!(report.checked_pairs, 3);
        assert!(report.holds());
    }

    #[test]
    fn report_json_shape() {
        let report = VerificationReport {
            bound: 2,
            checked_pairs: 7,
            violations: vec![],
            elapsed: Duration::from_millis(12),
            max_witness_length: None,
        };
        assert_eq!(
            serde_json::to_string(&report).unwrap(),
            r#"{"bound":2,"checked_pairs":7,"elapsed_ms":12,"violations":[]}"#
        );
    }

    #[test]
    fn atlas_json_shape() {
        let atlas = enumerate_classes(AmbientSpace::Sphere, 0);
        let json = serde_json::to_value(&atlas).unwrap();
        assert_eq!(json["space"], "s3");
        assert_eq!(json["bound"], 0);
        assert_eq!(json["classes"].as_array().unwrap().len(), 3);
        assert_eq!(json["classes"][0]["members"][0]["n"], 0);
    }

    #[test]
    fn split_groups_reports_extra_keys() {
        let t = |p| TorusLink::sphere(p, 0, 0).unwrap();
        let members = [t(1), t(2), t(3)];
        let by = [t(0), t(0), t(0)];
        let against = [t(5), t(5), t(6)];
        let v = split_groups(&members, &by, &against, |_, _, _| String::new());
        assert_eq!(v.len(), 1);
        assert_eq!((v[0].a, v[0].b), (t(1), t(3)));
    }
}
