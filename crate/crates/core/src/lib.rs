//! Torus-link calculus for links in the 3-sphere and in real projective
//! 3-space, together with the combinatorics of JSJ trees of projective link
//! complements.
//!
//! * [`link`] holds the triples `T(p, q; n)` and their ambient space.
//! * [`relation`] implements the four isotopy moves and witness chains.
//! * [`normal`] decides isotopy through canonical representatives, lifts
//!   projective links to the sphere, and classifies complements.
//! * [`atlas`] enumerates bounded universes of triples and runs the
//!   exhaustive verifiers.
//! * [`jsj`] models JSJ graphs as labelled trees, their potential functions,
//!   outermost pieces, and double covers.

pub mod atlas;
pub mod jsj;
pub mod link;
pub mod normal;
pub mod relation;
mod union_find;

pub use link::{AmbientSpace, LinkError, Slope, TorusLink};
pub use normal::{classify, isotopic, lift, normal_form, Classification, ClassificationKind};
pub use relation::{
    applicable_relations, apply_relation, Direction, Relation, RelationStep, WitnessChain,
};
