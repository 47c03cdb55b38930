//! Combinatorics of torus orbit closures in the type-A flag variety.
//!
//! The crate is organised around a few exact kernels:
//!
//! * [`group_core`]: permutations, Bruhat order, reduced words and patterns.
//! * [`exact_polytopes`]: lattice polytopes, face lattices, normal fans and Fano tests in exact
//!   arithmetic.
//! * [`matroids`], [`orbit_closures`]: Coxeter matroids, retractions, and fixed-point data of
//!   explicit rational flags.
//! * [`schubert`], [`richardson`], [`catalan_bott`]: the classification results built on top.
//!
//! [`cli`] wires these together for batch use.

pub mod catalan_bott;
pub mod cli;
pub mod exact_polytopes;
pub mod group_core;
pub mod matroids;
pub mod orbit_closures;
pub mod richardson;
pub mod schubert;

pub use group_core::{Permutation, ReducedWord, SignedPermutation};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
