//! Homomorphism bounds for signed bipartite partial t-trees.
//!
//! The crate decides whether a signed graph `B` of negative girth `2k` bounds
//! every signed bipartite partial t-tree of negative girth at least `2k`,
//! producing either a closed clique certificate together with a constructive
//! mapping, or a counterexample. Signed projective cubes and an edge-colouring
//! pipeline for planar multigraphs build on the same machinery.

pub mod signed;
pub mod weighted;
pub mod ttree;
pub mod bounds;
pub mod spc;
pub mod edgecolor;
