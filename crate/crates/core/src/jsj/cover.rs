//! Double covers of JSJ trees.
//!
//! A cover tree comes with an involution `σ` of its vertices. Besides being a
//! label-preserving automorphism that inverts no edge, `σ` must respect how
//! regions of RP3 lift to S3:
//!
//! * a knotted hole ball lies in a ball, so it lifts to two copies and its
//!   torus is never fixed;
//! * a solid torus or knotted hole ball whose boundary lifts to two tori lifts
//!   to two copies, neither containing a fixed piece, so a torus moved by `σ`
//!   points away from the fixed subtree;
//! * every torus in RP3 bounds a solid torus or knotted hole ball, so a piece
//!   lies on the unbounded side of at most one adjacent torus.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use super::format::{RawCover, RawEdge, RawTree, RawVertex};
use super::tree::{outermost, validate_tree, JsjTree, Region, TreeErrors};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum InvolutionViolation {
    UnknownVertex {
        vertex: String,
    },
    NotAnInvolution {
        vertex: String,
    },
    GeometryMismatch {
        vertex: String,
    },
    EdgeNotPreserved {
        u: String,
        v: String,
    },
    LabelMismatch {
        u: String,
        v: String,
    },
    /// A torus whose two sides are exchanged would quotient to a one-sided
    /// surface, and RP3 contains no Klein bottle.
    InvertedEdge {
        u: String,
        v: String,
    },
    FixedKnottedHoleBall {
        u: String,
        v: String,
    },
    /// A moved torus must bound a solid torus or knotted hole ball on the
    /// side away from the fixed pieces, with the fixed pieces beyond it.
    MovedTorusTowardFixed {
        u: String,
        v: String,
    },
    /// More than one adjacent torus has an unbounded far side.
    SeveralUnboundedSides {
        vertex: String,
    },
}

impl fmt::Display for InvolutionViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use InvolutionViolation::*;
        match self {
            UnknownVertex { vertex } => write!(f, "vertex map mentions unknown vertex {vertex:?}"),
            NotAnInvolution { vertex } => write!(f, "map is not an involution at {vertex:?}"),
            GeometryMismatch { vertex } => {
                write!(f, "{vertex:?} and its image have different geometry")
            }
            EdgeNotPreserved { u, v } => write!(f, "image of torus {u}-{v} is not a torus"),
            LabelMismatch { u, v } => {
                write!(f, "torus {u}-{v} and its image carry different labels")
            }
            InvertedEdge { u, v } => write!(f, "torus {u}-{v} is fixed with its sides swapped"),
            FixedKnottedHoleBall { u, v } => {
                write!(f, "torus {u}-{v} bounds a knotted hole ball but is fixed")
            }
            MovedTorusTowardFixed { u, v } => write!(
                f,
                "torus {u}-{v} is moved but does not bound a solid torus or knotted hole ball \
                 away from the fixed pieces"
            ),
            SeveralUnboundedSides { vertex } => write!(
                f,
                "{vertex:?} has more than one adjacent torus with an unbounded far side"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    Tree(#[from] TreeErrors),
    #[error("INVALID_INVOLUTION: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidInvolution(Vec<InvolutionViolation>),
}

impl CoverError {
    pub fn code(&self) -> &'static str {
        match self {
            CoverError::Tree(errors) => errors.0.first().map_or("NOT_A_TREE", |v| v.code()),
            CoverError::InvalidInvolution(_) => "INVALID_INVOLUTION",
        }
    }
}

/// A validated cover tree with its involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSpec {
    cover: JsjTree,
    vertex_map: Vec<usize>,
    edge_map: Vec<usize>,
}

impl CoverSpec {
    pub fn from_raw(raw: &RawCover) -> Result<Self, CoverError> {
        let tree = validate_tree(&raw.tree)?;
        Self::new(tree, &raw.involution.vertex_map)
    }

    /// Vertices absent from `vertex_map` are fixed.
    pub fn new(cover: JsjTree, vertex_map: &BTreeMap<String, String>) -> Result<Self, CoverError> {
        use InvolutionViolation::*;
        let name = |v: usize| cover.id(v).to_string();
        let mut bad = Vec::new();

        let mut sigma: Vec<usize> = (0..cover.vertex_count()).collect();
        for (from, to) in vertex_map {
            match (cover.vertex(from), cover.vertex(to)) {
                (Some(a), Some(b)) => sigma[a] = b,
                (a, _) => bad.push(UnknownVertex {
                    vertex: if a.is_none() {
                        from.clone()
                    } else {
                        to.clone()
                    },
                }),
            }
        }
        if !bad.is_empty() {
            return Err(CoverError::InvalidInvolution(bad));
        }
        for v in 0..sigma.len() {
            if sigma[sigma[v]] != v {
                bad.push(NotAnInvolution { vertex: name(v) });
            } else if cover.pieces()[v].geometry != cover.pieces()[sigma[v]].geometry {
                bad.push(GeometryMismatch { vertex: name(v) });
            }
        }
        if !bad.is_empty() {
            return Err(CoverError::InvalidInvolution(bad));
        }

        let mut edge_map = vec![0; cover.tori().len()];
        for (e, t) in cover.tori().iter().enumerate() {
            let (u, v) = (name(t.u), name(t.v));
            let (su, sv) = (sigma[t.u], sigma[t.v]);
            let Some(image) = cover.torus_between(su, sv) else {
                bad.push(EdgeNotPreserved { u, v });
                continue;
            };
            edge_map[e] = image;
            let it = &cover.tori()[image];
            if it.beyond(su) != t.beyond_u || it.beyond(sv) != t.beyond_v {
                bad.push(LabelMismatch {
                    u: u.clone(),
                    v: v.clone(),
                });
            }
            if su == t.v && sv == t.u {
                bad.push(InvertedEdge { u, v });
            } else if image == e
                && (t.beyond_u == Region::KnottedHoleBall || t.beyond_v == Region::KnottedHoleBall)
            {
                bad.push(FixedKnottedHoleBall { u, v });
            }
        }
        if !bad.is_empty() {
            return Err(CoverError::InvalidInvolution(bad));
        }

        // An involution of a finite tree inverting no edge fixes a subtree.
        let root = (0..sigma.len())
            .find(|&v| sigma[v] == v)
            .expect("involution without inverted edges has a fixed vertex");
        let mut stack = vec![(root, usize::MAX)];
        while let Some((x, via)) = stack.pop() {
            for &e in cover.incident(x) {
                if e == via {
                    continue;
                }
                let t = &cover.tori()[e];
                let child = t.other(x);
                if edge_map[e] != e && t.orientation() != Some((x, child)) {
                    bad.push(MovedTorusTowardFixed {
                        u: name(t.u),
                        v: name(t.v),
                    });
                }
                stack.push((child, e));
            }
        }
        for v in 0..sigma.len() {
            if cover.in_degree(v) > 1 {
                bad.push(SeveralUnboundedSides { vertex: name(v) });
            }
        }
        if !bad.is_empty() {
            return Err(CoverError::InvalidInvolution(bad));
        }

        Ok(CoverSpec {
            cover,
            vertex_map: sigma,
            edge_map,
        })
    }

    pub fn cover(&self) -> &JsjTree {
        &self.cover
    }

    pub fn image(&self, vertex: usize) -> usize {
        self.vertex_map[vertex]
    }

    pub fn edge_image(&self, torus: usize) -> usize {
        self.edge_map[torus]
    }

    pub fn fixed_vertices(&self) -> Vec<usize> {
        (0..self.vertex_map.len())
            .filter(|&v| self.vertex_map[v] == v)
            .collect()
    }

    /// The orbit representative: the member with the smaller id.
    fn representative(&self, v: usize) -> usize {
        let w = self.vertex_map[v];
        if self.cover.id(w) < self.cover.id(v) {
            w
        } else {
            v
        }
    }

    fn quotient_raw(&self) -> RawTree {
        let cover = &self.cover;
        let vertices = (0..cover.vertex_count())
            .filter(|&v| self.representative(v) == v)
            .map(|v| RawVertex {
                id: cover.id(v).to_string(),
                geometry: cover.pieces()[v].geometry,
            })
            .collect();
        let edges = cover
            .tori()
            .iter()
            .enumerate()
            .filter(|&(e, _)| self.edge_map[e] >= e)
            .map(|(_, t)| RawEdge {
                u: cover.id(self.representative(t.u)).to_string(),
                v: cover.id(self.representative(t.v)).to_string(),
                label_beyond_u: t.beyond_u,
                label_beyond_v: t.beyond_v,
            })
            .collect();
        RawTree { vertices, edges }
    }
}

/// The quotient tree. Each orbit of pieces becomes one vertex named after
/// its smaller id, each orbit of tori one edge with the inherited labels.
pub fn quotient(spec: &CoverSpec) -> JsjTree {
    validate_tree(&spec.quotient_raw()).expect("quotient of a valid cover is a valid tree")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma44Row {
    pub vertex: String,
    pub preimage: Vec<String>,
    /// The preimage is a single piece.
    pub connected: bool,
    /// Regions beyond the preimage that are not solid tori; zero when the
    /// preimage is disconnected.
    pub non_solid_torus_regions: usize,
    pub criterion: bool,
    pub outermost: bool,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma44Report {
    pub vertices: Vec<Lemma44Row>,
    pub mismatches: usize,
}

/// Compares, for every quotient piece, outermost status downstairs with the
/// cover criterion: connected preimage and an even number of adjacent
/// regions upstairs that are not solid tori.
pub fn lemma44_check(spec: &CoverSpec) -> Lemma44Report {
    let cover = &spec.cover;
    let down = quotient(spec);
    let outer: Vec<bool> = {
        let mut flags = vec![false; down.vertex_count()];
        for v in outermost(&down) {
            flags[v] = true;
        }
        flags
    };
    let rep_index: HashMap<&str, usize> =
        (0..down.vertex_count()).map(|v| (down.id(v), v)).collect();

    let mut vertices = Vec::with_capacity(down.vertex_count());
    for v in 0..cover.vertex_count() {
        if spec.representative(v) != v {
            continue;
        }
        let w = spec.image(v);
        let connected = w == v;
        let mut preimage = vec![cover.id(v).to_string()];
        if !connected {
            preimage.push(cover.id(w).to_string());
        }
        let non_solid_torus_regions = if connected {
            cover
                .incident(v)
                .iter()
                .filter(|&&e| cover.tori()[e].beyond(v) != Region::SolidTorus)
                .count()
        } else {
            0
        };
        let criterion = connected && non_solid_torus_regions % 2 == 0;
        let outermost = outer[rep_index[cover.id(v)]];
        vertices.push(Lemma44Row {
            vertex: cover.id(v).to_string(),
            preimage,
            connected,
            non_solid_torus_regions,
            criterion,
            outermost,
            agrees: criterion == outermost,
        });
    }
    vertices.sort_by(|a, b| a.vertex.cmp(&b.vertex));
    let mismatches = vertices.iter().filter(|r| !r.agrees).count();
    Lemma44Report {
        vertices,
        mismatches,
    }
}
