//! Concrete S-permutation matrices and everything built directly on them.
//!
//! Indices are 0-based throughout. A Π_n matrix stores, for each cell
//! `(i, j)` of an `n × n` grid, an ordered pair `(a, b)`; the matching
//! S-permutation matrix has block `(i, j)` carrying its single 1 at in-block
//! position `(a, b)`, i.e. at global position `(i·n + a, j·n + b)`.

mod cliques;
mod oracle;
mod pi;
mod sampler;
mod sudoku;

pub use cliques::{count_cliques, list_cliques, write_clique_list, DisjointnessGraph};
pub use oracle::{agreement_histogram, brute_force_disjoint_count, q_from_histogram};
pub use pi::{enumerate_pi, enumerate_sperm, pi_to_sperm, sperm_to_pi, PiMatrix, SPermutationMatrix};
pub use sampler::{sample_disjoint_family, SamplerConfig};
pub use sudoku::{
    compose_sudoku, decompose_sudoku, parse_family_file, validate_sudoku, write_family_file, SudokuMatrix,
};

/// Largest side size for which the full matrix space is enumerated.
pub const MAX_ENUMERATED_SIDE: usize = 3;
