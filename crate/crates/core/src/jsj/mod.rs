//! JSJ graphs of link complements in RP3, modelled as labelled trees.
//!
//! Each vertex is a JSJ piece and each edge a JSJ torus. An edge records,
//! for each endpoint, what the region on the far side of the torus is: a
//! solid torus, a knotted hole ball, or neither. Edge orientations, the
//! potential function and outermost pieces are derived from those labels.
//! A [`CoverSpec`] pairs a tree with an involution and models the preimage
//! in S3 of a projective link complement.

mod cover;
pub mod format;
pub mod generate;
mod tree;

pub use cover::{
    lemma44_check, quotient, CoverError, CoverSpec, InvolutionViolation, Lemma44Report, Lemma44Row,
};
pub use tree::{
    outermost, potential, potential_from, validate_tree, Geometry, JsjTree, Piece, Potential,
    Region, Torus, TreeErrors, TreeViolation,
};
