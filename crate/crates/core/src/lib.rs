//! Decision toolkit for right-angled Artin pro-p groups over finite
//! simplicial graphs.
//!
//! Everything the crate asserts about a graph comes with a machine-checkable
//! certificate:
//!
//! - [`classification`] decides whether the group of a graph is built from
//!   Zp by direct products and free pro-p products, returning either the
//!   construction tree or an induced square/4-path witness, together with
//!   the six equivalent group-theoretic property flags and the coherence
//!   verdict.
//! - [`recognition`] houses the certificate-producing graph algorithms:
//!   forbidden-subgraph search, dominating vertices, and chordality via
//!   lexicographic BFS with perfect elimination orderings or chordless
//!   cycles.
//! - [`cohomology`] turns clique counts into graded Betti numbers.
//! - [`presentation`], [`snf`] and [`schreier`] form the exact symbolic
//!   engine: group presentations, integer Smith normal form with verified
//!   unimodular transforms, pro-p abelian invariants, and index-p subgroup
//!   presentations by Reidemeister-Schreier rewriting.
//! - [`gog`] models finite graphs of pro-p groups with their explicit
//!   fundamental-group presentations, clique-separator decompositions of
//!   chordal graphs, and the tree-kernel rank recursion.

pub mod classification;
pub mod cohomology;
pub mod error;
pub mod fixtures;
pub mod gog;
pub mod graph;
pub mod presentation;
pub mod random;
pub mod recognition;
pub mod schreier;
pub mod snf;
pub mod word;

pub use error::{Error, Result};

/// Default cap on full clique enumeration (and the other exponential
/// searches that reuse it).
pub const DEFAULT_VERTEX_CAP: usize = 64;

/// Default prime for presentation-level computations. Graph-level verdicts
/// never depend on it.
pub const DEFAULT_PRIME: u64 = 2;
