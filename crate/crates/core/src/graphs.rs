//! Bipartite graphs `⟨R ∪ C, E⟩` with `|R| = |C| = n`, considered up to
//! independent relabeling of the row side `R` and the column side `C`.
//!
//! A graph is stored as its `n × n` biadjacency matrix packed into a `u32`:
//! bit `r·n + c` is set iff row vertex `r` is joined to column vertex `c`.
//! The two sides are never exchanged, so a graph and its transpose are in
//! general different classes.

use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::perm::permutations;

/// Largest side size enumerated without an opt-in.
pub const MAX_GUARANTEED_SIDE: usize = 4;
/// Largest side size the packed representation supports at all.
pub const MAX_SIDE: usize = 5;

/// Opt-in switches for jobs that are too heavy to run by default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Limits {
    /// Allow graph enumeration at `n = 5`.
    pub allow_n5_graphs: bool,
    /// Allow building the `n = 3` disjointness graph (~272 MB of adjacency bits).
    pub allow_n3_disjointness_graph: bool,
}

impl Limits {
    pub fn permissive() -> Self {
        Limits {
            allow_n5_graphs: true,
            allow_n3_disjointness_graph: true,
        }
    }

    /// Validates a side size for class enumeration.
    pub fn check_enumeration(&self, n: usize) -> Result<()> {
        if !(2..=MAX_SIDE).contains(&n) {
            return Err(Error::OutOfRange(format!(
                "graph side size must be in 2..={MAX_SIDE}, got {n}"
            )));
        }
        if n > MAX_GUARANTEED_SIDE && !self.allow_n5_graphs {
            return Err(Error::Infeasible(format!(
                "enumerating graphs with n = {n} requires the n = 5 opt-in"
            )));
        }
        Ok(())
    }
}

fn side_permutations(n: usize) -> &'static [Vec<u8>] {
    static CACHE: OnceLock<Vec<Vec<Vec<u8>>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=MAX_SIDE).map(permutations).collect())[n]
}

/// One labelled bipartite graph with sides of size `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BipartiteGraph {
    n: u8,
    edges: u32,
}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BipartiteGraph(n={}, {})", self.n, self.to_hex())
    }
}

impl BipartiteGraph {
    pub fn new(n: usize, edges: u32) -> Result<Self> {
        if !(1..=MAX_SIDE).contains(&n) {
            return Err(Error::OutOfRange(format!(
                "graph side size must be in 1..={MAX_SIDE}, got {n}"
            )));
        }
        if n * n < 32 && edges >> (n * n) != 0 {
            return Err(Error::Invalid(format!(
                "edge mask {edges:#x} has bits beyond {} cells",
                n * n
            )));
        }
        Ok(BipartiteGraph { n: n as u8, edges })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, full_mask(n))
    }

    /// Builds a graph from `(row, column)` pairs.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut mask = 0u32;
        for (r, c) in edges {
            if r >= n || c >= n {
                return Err(Error::Invalid(format!("edge ({r}, {c}) outside n = {n}")));
            }
            mask |= 1 << (r * n + c);
        }
        Self::new(n, mask)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn edges(&self) -> u32 {
        self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.count_ones() as usize
    }

    pub fn has_edge(&self, r: usize, c: usize) -> bool {
        self.edges >> (r * self.n() + c) & 1 == 1
    }

    /// Neighborhood of row vertex `r`, as a column bitmask.
    pub fn row(&self, r: usize) -> u32 {
        let n = self.n();
        (self.edges >> (r * n)) & ((1 << n) - 1)
    }

    /// Neighborhood of column vertex `c`, as a row bitmask.
    pub fn column(&self, c: usize) -> u32 {
        let n = self.n();
        (0..n).filter(|&r| self.has_edge(r, c)).fold(0, |acc, r| acc | 1 << r)
    }

    fn rows(&self) -> [u32; MAX_SIDE] {
        let mut rows = [0u32; MAX_SIDE];
        for (r, slot) in rows.iter_mut().enumerate().take(self.n()) {
            *slot = self.row(r);
        }
        rows
    }

    /// Moves every edge `(r, c)` to `(rho[r], sigma[c])`.
    pub fn relabel(&self, rho: &[u8], sigma: &[u8]) -> Self {
        let n = self.n();
        debug_assert!(rho.len() == n && sigma.len() == n);
        let mut mask = 0u32;
        for r in 0..n {
            for c in 0..n {
                if self.has_edge(r, c) {
                    mask |= 1 << (rho[r] as usize * n + sigma[c] as usize);
                }
            }
        }
        BipartiteGraph { n: self.n, edges: mask }
    }

    pub fn complement(&self) -> Self {
        BipartiteGraph {
            n: self.n,
            edges: !self.edges & full_mask(self.n()),
        }
    }

    /// The class representative: the numerically smallest edge mask reachable
    /// by relabeling rows and columns independently.
    ///
    /// For a fixed column permutation the best row permutation just sorts the
    /// row values so that the most significant row (row `n - 1`) is the
    /// smallest, so only `n!` column permutations are tried.
    pub fn canonical_form(&self) -> Self {
        let n = self.n();
        let rows = self.rows();
        let mut best = u32::MAX;
        let mut permuted = [0u32; MAX_SIDE];
        for sigma in side_permutations(n) {
            for r in 0..n {
                permuted[r] = permute_bits(rows[r], sigma);
            }
            permuted[..n].sort_unstable_by(|a, b| b.cmp(a));
            best = best.min(assemble(&permuted[..n], n));
        }
        BipartiteGraph { n: self.n, edges: best }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical_form().edges == self.edges
    }

    /// Number of pairs `(ρ, σ)` with `relabel(ρ, σ) = self`.
    pub fn automorphism_count(&self) -> u64 {
        let n = self.n();
        let rows = self.rows();
        let mut sorted = rows;
        sorted[..n].sort_unstable();
        // Row permutations that restore a given row multiset.
        let mut stabilizer = 1u64;
        let mut run = 1u64;
        for r in 1..n {
            if sorted[r] == sorted[r - 1] {
                run += 1;
                stabilizer *= run;
            } else {
                run = 1;
            }
        }
        let mut permuted = [0u32; MAX_SIDE];
        let mut matching = 0u64;
        for sigma in side_permutations(n) {
            for r in 0..n {
                permuted[r] = permute_bits(rows[r], sigma);
            }
            permuted[..n].sort_unstable();
            if permuted[..n] == sorted[..n] {
                matching += 1;
            }
        }
        matching * stabilizer
    }

    /// Number of labelled graphs isomorphic to this one: `(n!)² / |Aut|`.
    pub fn orbit_size(&self) -> u64 {
        let f = crate::perm::factorial_u64(self.n());
        f * f / self.automorphism_count()
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let n = self.n();
        let mut psi = vec![0u32; n + 1];
        for v in 0..n {
            psi[self.row(v).count_ones() as usize] += 1;
            psi[self.column(v).count_ones() as usize] += 1;
        }
        DegreeProfile { psi }
    }

    /// Sizes of the classes of vertices with equal neighborhoods. Isolated
    /// vertices form one class per side.
    pub fn neighborhood_classes(&self) -> ClassMultiset {
        let n = self.n();
        let mut deltas = Vec::with_capacity(2 * n);
        for side in [
            (0..n).map(|r| self.row(r)).collect::<Vec<_>>(),
            (0..n).map(|c| self.column(c)).collect::<Vec<_>>(),
        ] {
            let mut side = side;
            side.sort_unstable();
            let mut run = 1;
            for i in 1..=side.len() {
                if i < side.len() && side[i] == side[i - 1] {
                    run += 1;
                } else {
                    deltas.push(run);
                    run = 1;
                }
            }
        }
        deltas.sort_unstable();
        ClassMultiset { deltas }
    }

    /// Lowercase hex of the edge mask, `ceil(n²/4)` digits, bit 0 least significant.
    pub fn to_hex(&self) -> String {
        let width = (self.n() * self.n()).div_ceil(4);
        format!("{:0width$x}", self.edges, width = width)
    }

    pub fn from_hex(n: usize, s: &str) -> Result<Self> {
        let width = (n * n).div_ceil(4);
        if s.len() != width || !s.bytes().all(|b| b.is_ascii_digit() || (b'a'..=b'f').contains(&b)) {
            return Err(Error::Invalid(format!(
                "expected {width} lowercase hex digits for n = {n}, got {s:?}"
            )));
        }
        let edges = u32::from_str_radix(s, 16).map_err(|e| Error::Invalid(e.to_string()))?;
        Self::new(n, edges)
    }
}

fn full_mask(n: usize) -> u32 {
    if n * n >= 32 {
        u32::MAX
    } else {
        (1u32 << (n * n)) - 1
    }
}

#[inline]
fn permute_bits(row: u32, sigma: &[u8]) -> u32 {
    let mut out = 0;
    let mut bits = row;
    while bits != 0 {
        let c = bits.trailing_zeros() as usize;
        out |= 1 << sigma[c];
        bits &= bits - 1;
    }
    out
}

#[inline]
fn assemble(rows: &[u32], n: usize) -> u32 {
    rows.iter().enumerate().fold(0, |acc, (r, &v)| acc | v << (r * n))
}

pub fn is_isomorphic(g1: &BipartiteGraph, g2: &BipartiteGraph) -> Result<bool> {
    if g1.n != g2.n {
        return Err(Error::Incomparable(g1.n(), g2.n()));
    }
    Ok(g1.canonical_form() == g2.canonical_form())
}

/// `psi[i]` = number of vertices (both sides) of degree exactly `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DegreeProfile {
    pub psi: Vec<u32>,
}

/// Multiset of neighborhood-class sizes, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClassMultiset {
    pub deltas: Vec<u32>,
}

/// One representative per isomorphism class with `k` edges, sorted by mask.
///
/// Every representative has non-increasing row values (see
/// [`BipartiteGraph::canonical_form`]), so only such row tuples are
/// generated and each is kept iff it is its own canonical form.
pub fn enumerate_class_reps(n: usize, k: usize, limits: &Limits) -> Result<Vec<BipartiteGraph>> {
    limits.check_enumeration(n)?;
    if k > n * n {
        return Err(Error::OutOfRange(format!("edge count {k} exceeds n² = {}", n * n)));
    }
    let top = (1u32 << n) - 1;
    let mut reps: Vec<BipartiteGraph> = (0..=top)
        .into_par_iter()
        .flat_map_iter(|first| {
            let mut found = Vec::new();
            let mut rows = [0u32; MAX_SIDE];
            rows[0] = first;
            let used = first.count_ones() as usize;
            if used <= k {
                extend_rows(n, k - used, 1, &mut rows, &mut found);
            }
            found
        })
        .collect();
    reps.sort_unstable();
    Ok(reps)
}

fn extend_rows(n: usize, remaining: usize, depth: usize, rows: &mut [u32; MAX_SIDE], out: &mut Vec<BipartiteGraph>) {
    if depth == n {
        if remaining == 0 {
            let g = BipartiteGraph {
                n: n as u8,
                edges: assemble(&rows[..n], n),
            };
            if g.is_canonical() {
                out.push(g);
            }
        }
        return;
    }
    if remaining > (n - depth) * n {
        return;
    }
    let prev = rows[depth - 1];
    for value in (0..=prev).rev() {
        let ones = value.count_ones() as usize;
        if ones > remaining {
            continue;
        }
        rows[depth] = value;
        extend_rows(n, remaining - ones, depth + 1, rows, out);
    }
}

/// Entry `k` is the number of classes with `k` edges, for `k = 0..=n²`.
pub fn graph_count_table(n: usize, limits: &Limits) -> Result<Vec<usize>> {
    limits.check_enumeration(n)?;
    (0..=n * n)
        .map(|k| enumerate_class_reps(n, k, limits).map(|v| v.len()))
        .collect()
}

/// Renders the graph-class text file: a `n=<n> k=<k> count=<c>` header and
/// one hex mask per line.
pub fn write_class_file(n: usize, k: usize, reps: &[BipartiteGraph]) -> String {
    let mut out = format!("n={n} k={k} count={}\n", reps.len());
    for g in reps {
        out.push_str(&g.to_hex());
        out.push('\n');
    }
    out
}

pub fn parse_class_file(text: &str) -> Result<(usize, usize, Vec<BipartiteGraph>)> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| Error::Invalid("empty class file".into()))?;
    let fields = parse_header(header, &["n", "k", "count"])?;
    let (n, k, count) = (fields[0], fields[1], fields[2]);
    let reps = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| BipartiteGraph::from_hex(n, l.trim()))
        .collect::<Result<Vec<_>>>()?;
    if reps.len() != count {
        return Err(Error::Invalid(format!("header says {count} graphs, found {}", reps.len())));
    }
    if let Some(g) = reps.iter().find(|g| g.edge_count() != k) {
        return Err(Error::Invalid(format!("graph {} does not have {k} edges", g.to_hex())));
    }
    Ok((n, k, reps))
}

/// Parses `key=value` header fields in the given order.
pub(crate) fn parse_header(line: &str, keys: &[&str]) -> Result<Vec<usize>> {
    let parts: Vec<&str> = line.split_whitespace().collect();
    if parts.len() != keys.len() {
        return Err(Error::Invalid(format!("bad header {line:?}")));
    }
    parts
        .iter()
        .zip(keys)
        .map(|(part, key)| {
            part.strip_prefix(key)
                .and_then(|rest| rest.strip_prefix('='))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| Error::Invalid(format!("bad header field {part:?}, expected {key}=<int>")))
        })
        .collect()
}
