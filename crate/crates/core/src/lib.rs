//! Exact counting of disjoint pairs of S-permutation matrices.
//!
//! The crate has three layers:
//!
//! * [`graphs`] enumerates bipartite graphs with two labelled sides of size
//!   `n`, up to independent relabeling of each side, and computes the
//!   per-graph statistics (degree profile, neighborhood classes,
//!   automorphism count) that the counting formulas consume.
//! * [`formulas`] evaluates the closed-form counts in exact arithmetic:
//!   binary matrices with `k` ones, coincidence counts `q(n, k)`, the
//!   alternating sum for ordered disjoint pairs, and the Sudoku/clique
//!   relation.
//! * [`matrices`] holds concrete S-permutation matrices and the brute-force
//!   oracles used to check every formula, plus Sudoku composition and the
//!   disjointness graph.

pub mod error;
pub mod formulas;
pub mod graphs;
pub mod matrices;
pub mod perm;

pub use error::{Error, Result};
pub use formulas::{ClassTable, CountReport, LabelWeighting};
pub use graphs::{BipartiteGraph, ClassMultiset, DegreeProfile, Limits};
pub use matrices::{DisjointnessGraph, PiMatrix, SPermutationMatrix, SudokuMatrix};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
