//! Seeded random search for `n²` mutually disjoint S-permutation matrices.
//!
//! Matrices are built one after another, block by block. Each search level
//! places the 1 of one block of the current matrix; candidate in-block
//! positions are shuffled with the seeded RNG at every visit. A placement is
//! legal if its global cell is still free and the current matrix does not
//! yet use that global row or column. After each placement every remaining
//! block of the current matrix must still have a legal position.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

use super::pi::SPermutationMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplerConfig {
    /// Search nodes per attempt before restarting.
    pub node_budget: u64,
    pub max_restarts: u32,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            node_budget: 1_000_000,
            max_restarts: 32,
        }
    }
}

const MAX_SAMPLED_SIDE: usize = 6;

struct Search<'a> {
    n: usize,
    rng: &'a mut ChaCha8Rng,
    nodes: u64,
    budget: u64,
    occupied: Vec<bool>,
    rows_used: Vec<u64>,
    cols_used: Vec<u64>,
    placed: Vec<(u8, u8)>,
}

enum Outcome {
    Found,
    DeadEnd,
    OutOfBudget,
}

impl Search<'_> {
    fn sq(&self) -> usize {
        self.n * self.n
    }

    fn legal(&self, matrix: usize, block: usize, a: usize, b: usize) -> bool {
        let (s, t) = (block / self.n, block % self.n);
        let (row, col) = (s * self.n + a, t * self.n + b);
        !self.occupied[row * self.sq() + col]
            && self.rows_used[matrix] >> row & 1 == 0
            && self.cols_used[matrix] >> col & 1 == 0
    }

    fn remaining_blocks_open(&self, matrix: usize, from_block: usize) -> bool {
        let n = self.n;
        (from_block..self.sq()).all(|block| (0..self.sq()).any(|i| self.legal(matrix, block, i / n, i % n)))
    }

    fn run(&mut self, level: usize) -> Outcome {
        let sq = self.sq();
        if level == sq * sq {
            return Outcome::Found;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Outcome::OutOfBudget;
        }
        let (matrix, block) = (level / sq, level % sq);
        let (s, t) = (block / self.n, block % self.n);
        let mut order: Vec<usize> = (0..sq).collect();
        order.shuffle(self.rng);
        for i in order {
            let (a, b) = (i / self.n, i % self.n);
            if !self.legal(matrix, block, a, b) {
                continue;
            }
            let (row, col) = (s * self.n + a, t * self.n + b);
            self.occupied[row * sq + col] = true;
            self.rows_used[matrix] |= 1 << row;
            self.cols_used[matrix] |= 1 << col;
            self.placed.push((a as u8, b as u8));
            if self.remaining_blocks_open(matrix, block + 1) {
                match self.run(level + 1) {
                    Outcome::DeadEnd => {}
                    done => return done,
                }
            }
            self.placed.pop();
            self.occupied[row * sq + col] = false;
            self.rows_used[matrix] &= !(1 << row);
            self.cols_used[matrix] &= !(1 << col);
        }
        Outcome::DeadEnd
    }
}

/// `n²` pairwise-disjoint S-permutation matrices; the same `(n, seed,
/// config)` always yields the same family.
pub fn sample_disjoint_family(n: usize, seed: u64, config: &SamplerConfig) -> Result<Vec<SPermutationMatrix>> {
    if !(2..=MAX_SAMPLED_SIDE).contains(&n) {
        return Err(Error::OutOfRange(format!("sampler supports n in 2..={MAX_SAMPLED_SIDE}, got {n}")));
    }
    let sq = n * n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..=config.max_restarts {
        let mut search = Search {
            n,
            rng: &mut rng,
            nodes: 0,
            budget: config.node_budget,
            occupied: vec![false; sq * sq],
            rows_used: vec![0; sq],
            cols_used: vec![0; sq],
            placed: Vec::with_capacity(sq * sq),
        };
        match search.run(0) {
            Outcome::Found => {
                return search
                    .placed
                    .chunks(sq)
                    .map(|p| SPermutationMatrix::from_positions(n, p.to_vec()))
                    .collect();
            }
            // a dead end at the root means no family exists; cannot happen for n ≥ 2
            Outcome::DeadEnd => return Err(Error::Inconsistent("search space exhausted".into())),
            Outcome::OutOfBudget => {}
        }
    }
    Err(Error::BudgetExhausted {
        restarts: config.max_restarts,
    })
}
