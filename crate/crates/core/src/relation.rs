//! The four isotopy moves on torus-link triples.
//!
//! In S3:
//!
//! 1. `(p, q; n) = (-p, -q; n)`
//! 2. `(p, q; n) ≅ (q, p; n)` for `n = 0, 2`
//! 3. `(p, q; 0) ≅ (p - 1, (p - 1)q/p; 1)` when `p > 0` divides `q`
//! 4. `(p, q; 1) ≅ ((q - 1)p/q, q - 1; 2)` when `q > 0` divides `p`
//!
//! In RP3 the swap becomes the shear `p ↦ -p + 2q` (exchanging the two
//! meridian classes `μ` and `2λ + μ`), and move 4 uses `k = -p + 2q` in place
//! of `q`: `(p, q; 1) ≅ ((k - 1)p/k, (k - 1)q/k; 2)` when `k > 0` divides `q`.
//!
//! Moves 1 and 2 are involutions, so only their forward direction is ever
//! listed. Moves 3 and 4 raise `n` by one; their backward direction is listed
//! when the preimage is unique. The preimages of `(0, 0; 1)` under move 3
//! and of `(0, 0; 2)` under move 4 form infinite families and are therefore
//! never offered as backward moves, although replaying such a backward step
//! is still verified.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::link::{AmbientSpace, LinkError, TorusLink};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Relation {
    R1,
    R2,
    R3,
    R4,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::R1, Relation::R2, Relation::R3, Relation::R4];

    pub fn is_involution(self) -> bool {
        matches!(self, Relation::R1 | Relation::R2)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "fwd")]
    Forward,
    #[serde(rename = "bwd")]
    Backward,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RelationStep {
    pub relation: Relation,
    pub direction: Direction,
    pub before: TorusLink,
    pub after: TorusLink,
}

impl RelationStep {
    /// Re-applies the move and checks that it reproduces the recorded
    /// endpoints. A backward step is checked by running the forward move from
    /// `after`.
    pub fn replays(&self) -> bool {
        if self.before.space != self.after.space {
            return false;
        }
        let (from, to) = match self.direction {
            Direction::Forward => (&self.before, &self.after),
            Direction::Backward => (&self.after, &self.before),
        };
        forward(from, self.relation).is_ok_and(|t| t == *to)
    }

    /// The same move read in the opposite direction.
    pub fn inverse(&self) -> Self {
        RelationStep {
            relation: self.relation,
            direction: self.direction.flip(),
            before: self.after,
            after: self.before,
        }
    }
}

/// A sequence of moves certifying an isotopy between its two endpoints.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WitnessChain {
    pub steps: Vec<RelationStep>,
}

impl WitnessChain {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn push(&mut self, step: RelationStep) {
        self.steps.push(step);
    }

    pub fn extend(&mut self, other: impl IntoIterator<Item = RelationStep>) {
        self.steps.extend(other);
    }

    /// The chain read backwards, from its end to its start.
    pub fn reversed(&self) -> Self {
        WitnessChain {
            steps: self.steps.iter().rev().map(RelationStep::inverse).collect(),
        }
    }

    /// Checks that the chain starts at `from`, ends at `to`, that
    /// consecutive steps compose, and that every step replays. An empty chain
    /// certifies `from == to`.
    pub fn verify(&self, from: &TorusLink, to: &TorusLink) -> bool {
        let Some(first) = self.steps.first() else {
            return from == to;
        };
        let last = self.steps.last().unwrap();
        first.before == *from
            && last.after == *to
            && self.steps.windows(2).all(|w| w[0].after == w[1].before)
            && self.steps.iter().all(RelationStep::replays)
    }

    /// Values of `component_count` along the chain, starting at the first
    /// `before`.
    pub fn component_counts(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        if let Some(first) = self.steps.first() {
            out.push(first.before.component_count());
        }
        out.extend(self.steps.iter().map(|s| s.after.component_count()));
        out
    }
}

impl IntoIterator for WitnessChain {
    type Item = RelationStep;
    type IntoIter = std::vec::IntoIter<RelationStep>;

    fn into_iter(self) -> Self::IntoIter {
        self.steps.into_iter()
    }
}

fn narrow(link: &TorusLink, p: i128, q: i128, n: u8) -> Result<TorusLink, LinkError> {
    match (i64::try_from(p), i64::try_from(q)) {
        (Ok(p), Ok(q)) => Ok(link.with(p, q, n)),
        _ => Err(LinkError::Overflow(*link)),
    }
}

fn not_applicable(link: &TorusLink, relation: Relation, direction: Direction) -> LinkError {
    LinkError::NotApplicable {
        relation,
        direction,
        link: *link,
    }
}

fn forward(link: &TorusLink, relation: Relation) -> Result<TorusLink, LinkError> {
    let (p, q) = (i128::from(link.p), i128::from(link.q));
    let fail = || not_applicable(link, relation, Direction::Forward);
    match relation {
        Relation::R1 => narrow(link, -p, -q, link.n),
        Relation::R2 => {
            if link.n == 1 {
                return Err(fail());
            }
            match link.space {
                AmbientSpace::Sphere => narrow(link, q, p, link.n),
                AmbientSpace::Projective => narrow(link, -p + 2 * q, q, link.n),
            }
        }
        Relation::R3 => {
            if link.n != 0 || p <= 0 || q % p != 0 {
                return Err(fail());
            }
            narrow(link, p - 1, (p - 1) * (q / p), 1)
        }
        Relation::R4 => {
            if link.n != 1 {
                return Err(fail());
            }
            match link.space {
                AmbientSpace::Sphere => {
                    if q <= 0 || p % q != 0 {
                        return Err(fail());
                    }
                    narrow(link, (q - 1) * (p / q), q - 1, 2)
                }
                AmbientSpace::Projective => {
                    let k = -p + 2 * q;
                    if k <= 0 || q % k != 0 {
                        return Err(fail());
                    }
                    // p = 2q - k, so k | q forces k | p.
                    debug_assert_eq!(p % k, 0);
                    narrow(link, (k - 1) * (p / k), (k - 1) * (q / k), 2)
                }
            }
        }
    }
}

/// Unique preimage of `link` under the forward move, when one exists.
fn backward(link: &TorusLink, relation: Relation) -> Result<TorusLink, LinkError> {
    let (a, b) = (i128::from(link.p), i128::from(link.q));
    let fail = || not_applicable(link, relation, Direction::Backward);
    match relation {
        Relation::R1 | Relation::R2 => forward(link, relation).map_err(|_| fail()),
        Relation::R3 => {
            // (a, b; 1) comes from (a + 1, (a + 1)b/a; 0); a = 0 is the
            // infinite family (1, q; 0).
            if link.n != 1 || a < 1 || b % a != 0 {
                return Err(fail());
            }
            narrow(link, a + 1, (a + 1) * (b / a), 0)
        }
        Relation::R4 => {
            if link.n != 2 {
                return Err(fail());
            }
            match link.space {
                AmbientSpace::Sphere => {
                    if b < 1 || a % b != 0 {
                        return Err(fail());
                    }
                    narrow(link, (b + 1) * (a / b), b + 1, 1)
                }
                AmbientSpace::Projective => {
                    let j = 2 * b - a;
                    if j < 1 || b % j != 0 {
                        return Err(fail());
                    }
                    narrow(link, (j + 1) * (a / j), (j + 1) * (b / j), 1)
                }
            }
        }
    }
}

/// Every move that applies to `link`, in the order R1..R4, forward before
/// backward.
pub fn applicable_relations(link: &TorusLink) -> Vec<(Relation, Direction)> {
    let mut out = Vec::new();
    for relation in Relation::ALL {
        if forward(link, relation).is_ok() {
            out.push((relation, Direction::Forward));
        }
        if !relation.is_involution() && backward(link, relation).is_ok() {
            out.push((relation, Direction::Backward));
        }
    }
    out
}

pub fn apply_relation(
    link: &TorusLink,
    relation: Relation,
    direction: Direction,
) -> Result<RelationStep, LinkError> {
    let after = match direction {
        Direction::Forward => forward(link, relation)?,
        Direction::Backward => backward(link, relation)?,
    };
    Ok(RelationStep {
        relation,
        direction,
        before: *link,
        after,
    })
}
