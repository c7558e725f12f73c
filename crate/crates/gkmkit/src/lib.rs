//! GKM graphs for T-skeletal varieties and exact computation in the
//! associated rings of piecewise exponential functions.
//!
//! The crate is organized around four layers:
//!
//! * [`exp_ring`] — the group ring `Z[Δ]` of a character lattice, with
//!   congruence testing modulo `(1 - e^{-χ})` through integer normal forms;
//! * [`gkm_graph`] — weighted graphs of fixed points and invariant curves,
//!   with validation, products, subgraphs and symmetry actions;
//! * [`pe_ring`] — membership and bases for the subring of vertex tuples
//!   satisfying all edge congruences;
//! * [`builders`] — constructions for complete toric varieties, Schubert
//!   varieties (Bruhat intervals) and projective group embeddings,
//!   including the rook monoid family.
//!
//! All arithmetic is over `Z`; there is no floating point anywhere.
//! Edge-indexed work (membership checks, constraint assembly) runs on
//! rayon when the `parallel` feature is enabled (the default) and falls
//! back to sequential iteration otherwise; results are identical.

pub mod builders;
pub mod error;
pub mod exp_ring;
pub mod gkm_graph;
pub mod io;
pub mod pe_ring;

pub use error::{Error, Result};
