use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::format::{RawEdge, RawTree, RawVertex};
use crate::union_find::UnionFind;

/// What lies on one side of a JSJ torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Region {
    #[serde(rename = "st")]
    SolidTorus,
    #[serde(rename = "khb")]
    KnottedHoleBall,
    /// Neither a solid torus nor a knotted hole ball.
    #[serde(rename = "other")]
    Other,
}

impl Region {
    /// Solid torus or knotted hole ball.
    pub fn is_bounded(self) -> bool {
        !matches!(self, Region::Other)
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::SolidTorus => "SOLID_TORUS",
            Region::KnottedHoleBall => "KNOTTED_HOLE_BALL",
            Region::Other => "OTHER",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Hyperbolic,
    Seifert,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub id: String,
    pub geometry: Geometry,
}

/// A JSJ torus between pieces `u` and `v` (vertex indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Torus {
    pub u: usize,
    pub v: usize,
    /// Region on the far side from `u`, the one containing `v`.
    pub beyond_u: Region,
    /// Region on the far side from `v`, the one containing `u`.
    pub beyond_v: Region,
}

impl Torus {
    /// Far-side label as seen from endpoint `x`.
    pub fn beyond(&self, x: usize) -> Region {
        if x == self.u {
            self.beyond_u
        } else {
            debug_assert_eq!(x, self.v);
            self.beyond_v
        }
    }

    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    /// `(from, to)` when the edge points into the solid torus or knotted
    /// hole ball; `None` for a Heegaard torus (solid tori on both sides).
    pub fn orientation(&self) -> Option<(usize, usize)> {
        match (self.beyond_u.is_bounded(), self.beyond_v.is_bounded()) {
            (true, false) => Some((self.u, self.v)),
            (false, true) => Some((self.v, self.u)),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "code", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TreeViolation {
    NotATree {
        reason: String,
    },
    ForbiddenLabelPair {
        u: String,
        v: String,
        beyond_u: Region,
        beyond_v: Region,
    },
    UnlabeledEdge {
        u: String,
        v: String,
    },
}

impl TreeViolation {
    pub fn code(&self) -> &'static str {
        match self {
            TreeViolation::NotATree { .. } => "NOT_A_TREE",
            TreeViolation::ForbiddenLabelPair { .. } => "FORBIDDEN_LABEL_PAIR",
            TreeViolation::UnlabeledEdge { .. } => "UNLABELED_EDGE",
        }
    }
}

impl fmt::Display for TreeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeViolation::NotATree { reason } => write!(f, "NOT_A_TREE: {reason}"),
            TreeViolation::ForbiddenLabelPair { u, v, beyond_u, beyond_v } => write!(
                f,
                "FORBIDDEN_LABEL_PAIR: torus {u}-{v} has {beyond_u} beyond {u} and {beyond_v} beyond {v}"
            ),
            TreeViolation::UnlabeledEdge { u, v } => {
                write!(f, "UNLABELED_EDGE: torus {u}-{v} has neither side bounded")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid JSJ tree: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
pub struct TreeErrors(pub Vec<TreeViolation>);

/// A validated JSJ tree.
#[derive(Debug, Clone)]
pub struct JsjTree {
    pieces: Vec<Piece>,
    tori: Vec<Torus>,
    /// Tori adjacent to vertex `v` are `incident[offsets[v]..offsets[v + 1]]`.
    offsets: Vec<usize>,
    incident: Vec<usize>,
    /// Built on the first lookup by id.
    index: OnceLock<HashMap<String, usize>>,
}

impl PartialEq for JsjTree {
    fn eq(&self, other: &Self) -> bool {
        self.pieces == other.pieces && self.tori == other.tori
    }
}

impl Eq for JsjTree {}

fn label_violation(e: &RawEdge) -> Option<TreeViolation> {
    use Region::*;
    match (e.label_beyond_u, e.label_beyond_v) {
        (Other, Other) => Some(TreeViolation::UnlabeledEdge {
            u: e.u.clone(),
            v: e.v.clone(),
        }),
        // A torus bounding a knotted hole ball on one side and a solid torus
        // on the other would make the ambient space S3; the complement of a
        // knotted hole ball is a connected sum, never a knotted hole ball.
        (SolidTorus, KnottedHoleBall)
        | (KnottedHoleBall, SolidTorus)
        | (KnottedHoleBall, KnottedHoleBall) => Some(TreeViolation::ForbiddenLabelPair {
            u: e.u.clone(),
            v: e.v.clone(),
            beyond_u: e.label_beyond_u,
            beyond_v: e.label_beyond_v,
        }),
        _ => None,
    }
}

/// Checks the tree shape and the torus-side rules, collecting every
/// violation found.
pub fn validate_tree(raw: &RawTree) -> Result<JsjTree, TreeErrors> {
    let mut violations = Vec::new();
    let not_a_tree = |reason: String| TreeViolation::NotATree { reason };

    let mut index: HashMap<&str, usize> = HashMap::with_capacity(raw.vertices.len());
    for (i, v) in raw.vertices.iter().enumerate() {
        if index.insert(&v.id, i).is_some() {
            violations.push(not_a_tree(format!("duplicate vertex id {:?}", v.id)));
        }
    }
    let lookup = |id: &str| index.get(id).copied();
    if raw.vertices.is_empty() {
        violations.push(not_a_tree("no vertices".into()));
    }

    let mut tori = Vec::with_capacity(raw.edges.len());
    let mut uf = UnionFind::new(raw.vertices.len());
    let mut components = raw.vertices.len();
    for e in &raw.edges {
        if let Some(v) = label_violation(e) {
            violations.push(v);
        }
        let (Some(u), Some(v)) = (lookup(&e.u), lookup(&e.v)) else {
            for id in [&e.u, &e.v] {
                if lookup(id).is_none() {
                    violations.push(not_a_tree(format!("edge endpoint {id:?} is not a vertex")));
                }
            }
            continue;
        };
        if u == v {
            violations.push(not_a_tree(format!("self-loop at {:?}", e.u)));
            continue;
        }
        if uf.union(u, v) {
            components -= 1;
        } else {
            violations.push(not_a_tree(format!("cycle through edge {}-{}", e.u, e.v)));
        }
        tori.push(Torus {
            u,
            v,
            beyond_u: e.label_beyond_u,
            beyond_v: e.label_beyond_v,
        });
    }
    if !raw.vertices.is_empty() && components > 1 {
        violations.push(not_a_tree(format!("disconnected: {components} components")));
    }

    if !violations.is_empty() {
        return Err(TreeErrors(violations));
    }
    let mut offsets = vec![0usize; raw.vertices.len() + 1];
    for t in &tori {
        offsets[t.u + 1] += 1;
        offsets[t.v + 1] += 1;
    }
    for v in 0..raw.vertices.len() {
        offsets[v + 1] += offsets[v];
    }
    let mut fill = offsets.clone();
    let mut incident = vec![0usize; 2 * tori.len()];
    for (i, t) in tori.iter().enumerate() {
        for x in [t.u, t.v] {
            incident[fill[x]] = i;
            fill[x] += 1;
        }
    }
    Ok(JsjTree {
        pieces: raw
            .vertices
            .iter()
            .map(|v| Piece {
                id: v.id.clone(),
                geometry: v.geometry,
            })
            .collect(),
        tori,
        offsets,
        incident,
        index: OnceLock::new(),
    })
}

impl JsjTree {
    pub fn vertex_count(&self) -> usize {
        self.pieces.len()
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn tori(&self) -> &[Torus] {
        &self.tori
    }

    pub fn id(&self, vertex: usize) -> &str {
        &self.pieces[vertex].id
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.index
            .get_or_init(|| {
                self.pieces
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p.id.clone(), i))
                    .collect()
            })
            .get(id)
            .copied()
    }

    /// Indices of the tori adjacent to `vertex`.
    pub fn incident(&self, vertex: usize) -> &[usize] {
        &self.incident[self.offsets[vertex]..self.offsets[vertex + 1]]
    }

    /// The edge joining `a` and `b`, if any.
    pub fn torus_between(&self, a: usize, b: usize) -> Option<usize> {
        self.incident(a)
            .iter()
            .copied()
            .find(|&e| self.tori[e].other(a) == b)
    }

    /// Number of incident tori whose far side is `Other`, i.e. incoming
    /// oriented edges.
    pub fn in_degree(&self, vertex: usize) -> usize {
        self.incident(vertex)
            .iter()
            .filter(|&&e| self.tori[e].beyond(vertex) == Region::Other)
            .count()
    }

    pub fn to_raw(&self) -> RawTree {
        RawTree {
            vertices: self
                .pieces
                .iter()
                .map(|p| RawVertex {
                    id: p.id.clone(),
                    geometry: p.geometry,
                })
                .collect(),
            edges: self
                .tori
                .iter()
                .map(|t| RawEdge {
                    u: self.id(t.u).to_string(),
                    v: self.id(t.v).to_string(),
                    label_beyond_u: t.beyond_u,
                    label_beyond_v: t.beyond_v,
                })
                .collect(),
        }
    }
}

/// Integer labelling of the vertices rising by one along every oriented
/// edge and constant along unoriented ones, normalised to minimum 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    pub values: Vec<i64>,
}

impl Potential {
    pub fn satisfies(&self, tree: &JsjTree) -> bool {
        self.values.len() == tree.vertex_count()
            && self.values.iter().min() == Some(&0)
            && tree.tori().iter().all(|t| match t.orientation() {
                Some((from, to)) => self.values[from] + 1 == self.values[to],
                None => self.values[t.u] == self.values[t.v],
            })
    }

    /// Vertices no neighbour of which has a smaller value.
    pub fn local_minima(&self, tree: &JsjTree) -> Vec<usize> {
        (0..tree.vertex_count())
            .filter(|&v| {
                tree.incident(v)
                    .iter()
                    .all(|&e| self.values[tree.tori()[e].other(v)] >= self.values[v])
            })
            .collect()
    }

    pub fn by_id(&self, tree: &JsjTree) -> BTreeMap<String, i64> {
        self.values
            .iter()
            .enumerate()
            .map(|(v, &f)| (tree.id(v).to_string(), f))
            .collect()
    }
}

/// Propagates the potential outward from `root`.
pub fn potential_from(tree: &JsjTree, root: usize) -> Potential {
    let mut values = vec![0i64; tree.vertex_count()];
    let mut seen = vec![false; tree.vertex_count()];
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(x) = queue.pop_front() {
        for &e in tree.incident(x) {
            let t = &tree.tori()[e];
            let y = t.other(x);
            if seen[y] {
                continue;
            }
            let step = match t.orientation() {
                Some((from, _)) if from == x => 1,
                Some(_) => -1,
                None => 0,
            };
            values[y] = values[x] + step;
            seen[y] = true;
            queue.push_back(y);
        }
    }
    let min = values.iter().copied().min().unwrap_or(0);
    for f in &mut values {
        *f -= min;
    }
    Potential { values }
}

pub fn potential(tree: &JsjTree) -> Potential {
    potential_from(tree, 0)
}

/// Pieces whose every adjacent torus bounds a solid torus or knotted hole
/// ball on the far side, sorted by vertex index.
///
/// # Panics
///
/// If the set differs from the local minima of the potential, or is empty.
/// Neither can happen for a validated tree.
pub fn outermost(tree: &JsjTree) -> Vec<usize> {
    let by_labels: Vec<usize> = (0..tree.vertex_count())
        .filter(|&v| {
            tree.incident(v)
                .iter()
                .all(|&e| tree.tori()[e].beyond(v).is_bounded())
        })
        .collect();
    let by_potential = potential(tree).local_minima(tree);
    assert_eq!(
        by_labels, by_potential,
        "label and potential criteria disagree"
    );
    assert!(
        !by_labels.is_empty(),
        "a finite tree has an outermost piece"
    );
    by_labels
}
