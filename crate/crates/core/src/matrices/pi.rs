use std::fmt;

use crate::error::{Error, Result};
use crate::perm::{is_permutation, permutations};

use super::MAX_ENUMERATED_SIDE;

/// An `n × n` grid of ordered pairs whose row first-components and column
/// second-components are permutations of `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PiMatrix {
    n: usize,
    cells: Vec<(u8, u8)>,
}

impl fmt::Debug for PiMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PiMatrix(n={}, {:?})", self.n, self.cells)
    }
}

fn check_pairs(n: usize, cells: &[(u8, u8)]) -> Result<()> {
    if n == 0 || n > 15 {
        return Err(Error::OutOfRange(format!("side size must be in 1..=15, got {n}")));
    }
    if cells.len() != n * n {
        return Err(Error::Invalid(format!("expected {} cells, got {}", n * n, cells.len())));
    }
    for i in 0..n {
        if !is_permutation((0..n).map(|j| cells[i * n + j].0 as usize), n) {
            return Err(Error::Invalid(format!("first components of row {i} are not a permutation")));
        }
        if !is_permutation((0..n).map(|r| cells[r * n + i].1 as usize), n) {
            return Err(Error::Invalid(format!("second components of column {i} are not a permutation")));
        }
    }
    Ok(())
}

impl PiMatrix {
    /// `cells` is row-major, 0-based pairs.
    pub fn new(n: usize, cells: Vec<(u8, u8)>) -> Result<Self> {
        check_pairs(n, &cells)?;
        Ok(PiMatrix { n, cells })
    }

    /// Cell `(i, j)` gets `(rows[i][j], cols[j][i])`.
    pub fn from_permutations(rows: &[Vec<u8>], cols: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        if cols.len() != n || rows.iter().chain(cols).any(|p| p.len() != n) {
            return Err(Error::Invalid("need n permutations of length n per side".into()));
        }
        let cells = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| (rows[i][j], cols[j][i]))
            .collect();
        Self::new(n, cells)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> (usize, usize) {
        let (a, b) = self.cells[i * self.n + j];
        (a as usize, b as usize)
    }

    pub fn cells(&self) -> &[(u8, u8)] {
        &self.cells
    }

    /// Cells where both matrices hold the same pair.
    pub fn agreements(&self, other: &PiMatrix) -> usize {
        self.cells.iter().zip(&other.cells).filter(|(x, y)| x == y).count()
    }
}

/// An `n² × n²` permutation matrix with exactly one 1 in every `n × n` block.
///
/// Stored as the in-block position of each block's 1 (block-major) plus a
/// fingerprint with bit `cell·n² + symbol` set, where `cell = s·n + t` is
/// the block index and `symbol = a·n + b` encodes the in-block position.
/// Two matrices are disjoint iff their fingerprints share no bit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SPermutationMatrix {
    n: usize,
    positions: Vec<(u8, u8)>,
    fingerprint: Vec<u64>,
}

impl fmt::Debug for SPermutationMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SPermutationMatrix(n={}, {:?})", self.n, self.symbol_codes())
    }
}

impl SPermutationMatrix {
    /// `positions[s·n + t] = (a, b)`: block `(s, t)` has its 1 at in-block
    /// row `a`, column `b`.
    pub fn from_positions(n: usize, positions: Vec<(u8, u8)>) -> Result<Self> {
        check_pairs(n, &positions)?;
        let sq = n * n;
        let mut fingerprint = vec![0u64; (sq * sq).div_ceil(64)];
        for (cell, &(a, b)) in positions.iter().enumerate() {
            let bit = cell * sq + a as usize * n + b as usize;
            fingerprint[bit / 64] |= 1 << (bit % 64);
        }
        Ok(SPermutationMatrix { n, positions, fingerprint })
    }

    /// Decodes one symbol code `a·n + b` per block, block-major.
    pub fn from_symbol_codes(n: usize, codes: &[usize]) -> Result<Self> {
        if codes.iter().any(|&c| c >= n * n) {
            return Err(Error::Invalid(format!("symbol code out of range for n = {n}")));
        }
        Self::from_positions(n, codes.iter().map(|&c| ((c / n) as u8, (c % n) as u8)).collect())
    }

    /// Reads an `n² × n²` 0/1 matrix, checking the block structure.
    pub fn from_binary(rows: &[Vec<u8>]) -> Result<Self> {
        let sq = rows.len();
        let n = (sq as f64).sqrt().round() as usize;
        if n * n != sq || n == 0 || rows.iter().any(|r| r.len() != sq) {
            return Err(Error::Invalid("binary matrix must be n² × n²".into()));
        }
        let mut positions = vec![None; sq];
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                match v {
                    0 => {}
                    1 => {
                        let slot = &mut positions[(r / n) * n + c / n];
                        if slot.is_some() {
                            return Err(Error::Invalid(format!("block ({}, {}) has more than one 1", r / n, c / n)));
                        }
                        *slot = Some(((r % n) as u8, (c % n) as u8));
                    }
                    _ => return Err(Error::Invalid(format!("entry {v} is not binary"))),
                }
            }
        }
        let positions = positions
            .into_iter()
            .enumerate()
            .map(|(cell, p)| p.ok_or_else(|| Error::Invalid(format!("block {cell} has no 1"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_positions(n, positions)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[(u8, u8)] {
        &self.positions
    }

    pub fn fingerprint(&self) -> &[u64] {
        &self.fingerprint
    }

    /// Global `(row, column)` of the 1 in block `(s, t)`.
    pub fn one_in_block(&self, s: usize, t: usize) -> (usize, usize) {
        let (a, b) = self.positions[s * self.n + t];
        (s * self.n + a as usize, t * self.n + b as usize)
    }

    pub fn symbol_codes(&self) -> Vec<usize> {
        self.positions
            .iter()
            .map(|&(a, b)| a as usize * self.n + b as usize)
            .collect()
    }

    pub fn to_binary(&self) -> Vec<Vec<u8>> {
        let sq = self.n * self.n;
        let mut out = vec![vec![0u8; sq]; sq];
        for s in 0..self.n {
            for t in 0..self.n {
                let (r, c) = self.one_in_block(s, t);
                out[r][c] = 1;
            }
        }
        out
    }

    pub fn is_disjoint(&self, other: &SPermutationMatrix) -> Result<bool> {
        Ok(self.shared_ones(other)? == 0)
    }

    /// Positions where both matrices have a 1.
    pub fn shared_ones(&self, other: &SPermutationMatrix) -> Result<usize> {
        if self.n != other.n {
            return Err(Error::Incomparable(self.n, other.n));
        }
        Ok(self
            .fingerprint
            .iter()
            .zip(&other.fingerprint)
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum())
    }

    /// Fingerprint packed into one word; only meaningful for `n ≤ 3`.
    pub(crate) fn fingerprint_u128(&self) -> u128 {
        debug_assert!(self.n <= 3);
        self.fingerprint
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &w)| acc | (w as u128) << (64 * i))
    }
}

pub fn pi_to_sperm(p: &PiMatrix) -> Result<SPermutationMatrix> {
    SPermutationMatrix::from_positions(p.n, p.cells.clone())
}

pub fn sperm_to_pi(a: &SPermutationMatrix) -> Result<PiMatrix> {
    PiMatrix::new(a.n, a.positions.clone())
}

fn check_enumerable(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("side size must be positive".into()));
    }
    if n > MAX_ENUMERATED_SIDE {
        return Err(Error::Infeasible(format!(
            "enumerating ({n}!)^{} matrices is not supported; limit is n = {MAX_ENUMERATED_SIDE}",
            2 * n
        )));
    }
    Ok(())
}

/// All of Π_n, lexicographic over `(ρ₁, …, ρ_n, σ₁, …, σ_n)` with each
/// permutation ordered by its lexicographic rank.
pub fn enumerate_pi(n: usize) -> Result<Vec<PiMatrix>> {
    check_enumerable(n)?;
    let perms = permutations(n);
    let f = perms.len();
    let total = f.pow(2 * n as u32);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0usize; 2 * n];
    for _ in 0..total {
        let rows: Vec<Vec<u8>> = digits[..n].iter().map(|&d| perms[d].clone()).collect();
        let cols: Vec<Vec<u8>> = digits[n..].iter().map(|&d| perms[d].clone()).collect();
        out.push(PiMatrix::from_permutations(&rows, &cols)?);
        // odometer, last digit fastest
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < f {
                break;
            }
            *d = 0;
        }
    }
    Ok(out)
}

/// All of Σ_{n²}, in the same order as [`enumerate_pi`].
pub fn enumerate_sperm(n: usize) -> Result<Vec<SPermutationMatrix>> {
    enumerate_pi(n)?.iter().map(pi_to_sperm).collect()
}
