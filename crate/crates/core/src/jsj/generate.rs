//! Seeded random trees and covers for property tests and the CLI.
//!
//! Tree shapes come from uniformly random Prüfer sequences. Tree labels are
//! drawn uniformly from the five admissible label pairs. Covers are built by
//! doubling a base tree off a random fixed subtree.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::format::{RawCover, RawInvolution, RawTree};
use super::tree::{Geometry, Region};

/// The unordered label pairs allowed on a JSJ torus, as
/// `(beyond_u, beyond_v)`.
pub const ALLOWED_PAIRS: [(Region, Region); 5] = [
    (Region::SolidTorus, Region::SolidTorus),
    (Region::SolidTorus, Region::Other),
    (Region::Other, Region::SolidTorus),
    (Region::KnottedHoleBall, Region::Other),
    (Region::Other, Region::KnottedHoleBall),
];

/// Edges of a uniformly random labelled tree on `0..n`.
pub fn prufer_edges<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    // Linear-time decoding: `ptr` scans for the smallest leaf, and a vertex
    // that becomes a leaf below `ptr` is used immediately.
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (0..n).find(|&v| degree[v] == 1).unwrap();
    let mut leaf = ptr;
    for &c in &code {
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 && c < ptr {
            leaf = c;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

fn geometry<R: Rng + ?Sized>(rng: &mut R) -> Geometry {
    if rng.gen_bool(0.5) {
        Geometry::Hyperbolic
    } else {
        Geometry::Seifert
    }
}

/// A random valid JSJ tree with `n ≥ 1` vertices named `v0, v1, ...`.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, n: usize) -> RawTree {
    let names: Vec<String> = (0..n.max(1)).map(|i| format!("v{i}")).collect();
    let mut raw = RawTree::default();
    for name in &names {
        raw.vertex(name.clone(), geometry(rng));
    }
    for (u, v) in prufer_edges(rng, n) {
        let (a, b) = *ALLOWED_PAIRS.choose(rng).unwrap();
        raw.edge(names[u].clone(), names[v].clone(), a, b);
    }
    raw
}

/// A random cover together with the base tree it doubles.
#[derive(Debug, Clone)]
pub struct GeneratedCover {
    pub cover: RawCover,
    pub base: RawTree,
    /// Number of base vertices whose preimage is a single piece.
    pub fixed: usize,
}

/// Builds a random cover over a base tree with `n ≥ 1` vertices.
///
/// A random connected set of base vertices containing a random root is kept
/// fixed; every other vertex is doubled. Tori inside the fixed set are
/// Heegaard tori or bound a solid torus on one side, with at most one
/// unbounded side per piece. Tori leaving the fixed set point away from it
/// and bound a solid torus or knotted hole ball.
pub fn random_cover<R: Rng + ?Sized>(rng: &mut R, n: usize) -> GeneratedCover {
    let n = n.max(1);
    let edges = prufer_edges(rng, n);
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in &edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    let geometries: Vec<Geometry> = (0..n).map(|_| geometry(rng)).collect();

    // Breadth-first order from the root; a child is fixed with probability
    // `keep` when its parent is.
    let root = rng.gen_range(0..n);
    let keep = [0.0, 0.3, 0.7, 1.0][rng.gen_range(0..4)];
    let mut fixed = vec![false; n];
    let mut parent = vec![usize::MAX; n];
    let mut order = vec![root];
    fixed[root] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &y in &adjacency[x] {
            if y != parent[x] {
                parent[y] = x;
                fixed[y] = fixed[x] && rng.gen_bool(keep);
                order.push(y);
            }
        }
        i += 1;
    }

    // Base labels, recorded as (parent, child, beyond_parent, beyond_child).
    let mut in_degree = vec![0usize; n];
    let mut labelled = Vec::with_capacity(n - 1);
    for &child in &order[1..] {
        let p = parent[child];
        let (bp, bc) = if fixed[child] {
            match rng.gen_range(0..3) {
                0 => (Region::SolidTorus, Region::SolidTorus),
                1 if in_degree[p] == 0 => {
                    in_degree[p] += 1;
                    (Region::Other, Region::SolidTorus)
                }
                _ => {
                    in_degree[child] += 1;
                    (Region::SolidTorus, Region::Other)
                }
            }
        } else {
            let bounded = if rng.gen_bool(0.5) {
                Region::SolidTorus
            } else {
                Region::KnottedHoleBall
            };
            (bounded, Region::Other)
        };
        labelled.push((p, child, bp, bc));
    }

    let mut base = RawTree::default();
    for (v, &g) in geometries.iter().enumerate() {
        base.vertex(format!("b{v}"), g);
    }
    for &(p, c, bp, bc) in &labelled {
        base.edge(format!("b{p}"), format!("b{c}"), bp, bc);
    }

    // Upstairs names are shuffled so that ids carry no structure.
    let copies: Vec<usize> = (0..n).map(|v| if fixed[v] { 1 } else { 2 }).collect();
    let total: usize = copies.iter().sum();
    let mut names: Vec<usize> = (0..total).collect();
    names.shuffle(rng);
    let mut next = names.into_iter().map(|k| format!("c{k}"));
    let lifted: Vec<Vec<String>> = copies
        .iter()
        .map(|&k| (0..k).map(|_| next.next().unwrap()).collect())
        .collect();

    let mut tree = RawTree::default();
    let mut vertex_map = BTreeMap::new();
    for v in 0..n {
        for id in &lifted[v] {
            tree.vertex(id.clone(), geometries[v]);
        }
        if let [a, b] = lifted[v].as_slice() {
            vertex_map.insert(a.clone(), b.clone());
            vertex_map.insert(b.clone(), a.clone());
        }
    }
    for &(p, c, bp, bc) in &labelled {
        for k in 0..copies[c] {
            // A fixed parent is shared by both copies of a moved child.
            let up = &lifted[p][k.min(copies[p] - 1)];
            tree.edge(up.clone(), lifted[c][k].clone(), bp, bc);
        }
    }
    let mut vertices = tree.vertices;
    vertices.shuffle(rng);
    tree.vertices = vertices;

    GeneratedCover {
        cover: RawCover {
            tree,
            involution: RawInvolution { vertex_map },
        },
        base,
        fixed: fixed.iter().filter(|&&f| f).count(),
    }
}
