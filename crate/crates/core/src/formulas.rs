//! Closed-form counts over bipartite graph classes, in exact arithmetic.
//!
//! Every formula here sums a per-class term over the classes with `k` edges.
//! Each term carries a factor for how many labelled `n × n` binary matrices
//! the class accounts for, and that factor comes in two flavours (see
//! [`LabelWeighting`]):
//!
//! * [`LabelWeighting::NeighborhoodClasses`] uses `(n!)² / Π δ!` with the
//!   `δ` taken from the neighborhood-equality classes. This is the published
//!   form of the formulas and the one the plain functions (`omega`, `theta`,
//!   `b_count`, `q_count`, `disjoint_ordered`, ...) evaluate.
//! * [`LabelWeighting::Orbit`] uses the true orbit size `(n!)² / |Aut(g)|`.
//!
//! The two agree whenever every automorphism of `g` only permutes vertices
//! with identical neighborhoods. They differ as soon as a graph has a
//! "diagonal" symmetry: the 2×2 identity pattern has two labelled copies,
//! while `(2!)² / 1! ^ 4 = 4`. The brute-force oracles in
//! [`crate::matrices`] side with the orbit weighting.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graphs::{enumerate_class_reps, BipartiteGraph, ClassMultiset, DegreeProfile, Limits};

pub type ExactRational = BigRational;

const FACTORIAL_CACHE: usize = 64;

/// `m!` as a big integer; memoized for `m < 64`.
pub fn factorial(m: usize) -> BigInt {
    static CACHE: OnceLock<Vec<BigInt>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| {
        let mut v = vec![BigInt::one()];
        for i in 1..FACTORIAL_CACHE {
            let next = &v[i - 1] * BigInt::from(i);
            v.push(next);
        }
        v
    });
    if m < FACTORIAL_CACHE {
        cache[m].clone()
    } else {
        (FACTORIAL_CACHE..=m).fold(cache[FACTORIAL_CACHE - 1].clone(), |acc, i| acc * BigInt::from(i))
    }
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

fn pow(base: &BigInt, exp: usize) -> BigInt {
    num_traits::pow(base.clone(), exp)
}

fn to_integer(value: &BigRational, what: &str) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::Inconsistent(format!("{what} evaluated to the non-integer {value}")))
    }
}

/// How a class is credited with labelled matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabelWeighting {
    /// `(n!)² / Π_{δ ∈ [g]} δ!` (the published weighting).
    NeighborhoodClasses,
    /// `(n!)² / |Aut(g)|`, the exact number of labelled copies.
    Orbit,
}

impl LabelWeighting {
    pub fn name(&self) -> &'static str {
        match self {
            LabelWeighting::NeighborhoodClasses => "neighborhood-classes",
            LabelWeighting::Orbit => "orbit",
        }
    }
}

/// A class representative with the statistics every formula needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRecord {
    pub graph: BipartiteGraph,
    pub profile: DegreeProfile,
    pub classes: ClassMultiset,
    pub automorphisms: u64,
}

impl ClassRecord {
    pub fn new(graph: BipartiteGraph) -> Self {
        ClassRecord {
            profile: graph.degree_profile(),
            classes: graph.neighborhood_classes(),
            automorphisms: graph.automorphism_count(),
            graph,
        }
    }

    fn n(&self) -> usize {
        self.graph.n()
    }

    /// The per-class factor with `(n!)²` divided out:
    /// `1 / Π δ!` or `1 / |Aut(g)|`.
    pub fn class_factor(&self, weighting: LabelWeighting) -> BigRational {
        let denom = match weighting {
            LabelWeighting::NeighborhoodClasses => self
                .classes
                .deltas
                .iter()
                .map(|&d| factorial(d as usize))
                .product(),
            LabelWeighting::Orbit => BigInt::from(self.automorphisms),
        };
        BigRational::new(BigInt::one(), denom)
    }

    /// Labelled matrices credited to this class.
    pub fn labelled_count(&self, weighting: LabelWeighting) -> BigRational {
        let f = factorial(self.n());
        self.class_factor(weighting) * BigRational::from_integer(&f * &f)
    }

    /// `Π_{i=0}^{n-2} [(n-i)!]^{ψ_i}`.
    pub fn profile_product(&self) -> BigInt {
        let n = self.n();
        (0..n.saturating_sub(1))
            .map(|i| pow(&factorial(n - i), self.profile.psi[i] as usize))
            .product()
    }

    /// `Π_{v ∈ R ∪ C} (n - |γ(v)|)!`, straight from the vertex degrees.
    pub fn vertex_product(&self) -> BigInt {
        let n = self.n();
        let g = &self.graph;
        (0..n)
            .flat_map(|v| [g.row(v).count_ones(), g.column(v).count_ones()])
            .map(|deg| factorial(n - deg as usize))
            .product()
    }

    /// The per-graph characteristic `ω(g)` under the given weighting.
    pub fn omega(&self, weighting: LabelWeighting) -> BigRational {
        self.class_factor(weighting) * BigRational::from_integer(self.profile_product())
    }
}

/// All classes for one side size, grouped by edge count.
#[derive(Debug, Clone)]
pub struct ClassTable {
    n: usize,
    by_edges: Vec<Vec<ClassRecord>>,
}

impl ClassTable {
    pub fn build(n: usize, limits: &Limits) -> Result<Self> {
        limits.check_enumeration(n)?;
        let by_edges = (0..=n * n)
            .map(|k| {
                enumerate_class_reps(n, k, limits).map(|reps| reps.into_iter().map(ClassRecord::new).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassTable { n, by_edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn classes(&self, k: usize) -> Result<&[ClassRecord]> {
        self.by_edges
            .get(k)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::OutOfRange(format!("edge count {k} exceeds n² = {}", self.n * self.n)))
    }

    pub fn theta(&self, k: usize, weighting: LabelWeighting) -> Result<BigRational> {
        Ok(self.classes(k)?.iter().map(|c| c.omega(weighting)).sum())
    }

    /// Binary `n × n` matrices with exactly `k` ones.
    pub fn b_count(&self, k: usize, weighting: LabelWeighting) -> Result<BigInt> {
        let sum: BigRational = self.classes(k)?.iter().map(|c| c.labelled_count(weighting)).sum();
        to_integer(&sum, &format!("b({}, {k})", self.n))
    }

    pub fn binomial_identity_holds(&self, weighting: LabelWeighting) -> Result<bool> {
        let m = self.n * self.n;
        for k in 0..=m {
            if self.b_count(k, weighting)? != binomial(m, k) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ordered pairs of Π_n matrices together with a designated set of `k`
    /// coinciding cells.
    pub fn q_count(&self, k: usize, weighting: LabelWeighting) -> Result<BigInt> {
        let n = self.n;
        let sum: BigRational = self
            .classes(k)?
            .iter()
            .map(|c| c.class_factor(weighting) * BigRational::from_integer(c.vertex_product()))
            .sum();
        let scaled = sum * BigRational::from_integer(pow(&factorial(n), 2 * (n + 1)));
        to_integer(&scaled, &format!("q({n}, {k})"))
    }

    /// Alternating sum built from the vertex-degree products.
    fn ordered_via_vertex_products(&self, weighting: LabelWeighting) -> Result<BigInt> {
        let mut alternating = BigRational::zero();
        for k in 1..=self.n * self.n {
            let inner: BigRational = self.by_edges[k]
                .iter()
                .map(|c| c.class_factor(weighting) * BigRational::from_integer(c.vertex_product()))
                .sum();
            if k % 2 == 0 {
                alternating += inner;
            } else {
                alternating -= inner;
            }
        }
        self.assemble_ordered(alternating, "vertex-product route")
    }

    /// Alternating sum built from θ(n, k).
    fn ordered_via_theta(&self, weighting: LabelWeighting) -> Result<BigInt> {
        let mut alternating = BigRational::zero();
        for k in 1..=self.n * self.n {
            let theta = self.theta(k, weighting)?;
            if k % 2 == 0 {
                alternating += theta;
            } else {
                alternating -= theta;
            }
        }
        self.assemble_ordered(alternating, "theta route")
    }

    fn assemble_ordered(&self, alternating: BigRational, route: &str) -> Result<BigInt> {
        let f = factorial(self.n);
        let total = BigRational::from_integer(pow(&f, 4 * self.n))
            + alternating * BigRational::from_integer(pow(&f, 2 * (self.n + 1)));
        to_integer(&total, route)
    }

    /// Ordered pairs of disjoint S-permutation matrices, computed along both
    /// routes; any disagreement is an error.
    pub fn disjoint_ordered(&self, weighting: LabelWeighting) -> Result<BigInt> {
        let by_vertices = self.ordered_via_vertex_products(weighting)?;
        let by_theta = self.ordered_via_theta(weighting)?;
        if by_vertices != by_theta {
            return Err(Error::Inconsistent(format!(
                "vertex-product route gives {by_vertices}, theta route gives {by_theta}"
            )));
        }
        if by_theta.is_negative() {
            return Err(Error::Inconsistent(format!("negative pair count {by_theta}")));
        }
        Ok(by_theta)
    }

    pub fn disjoint_unordered(&self, weighting: LabelWeighting) -> Result<BigInt> {
        halve(&self.disjoint_ordered(weighting)?)
    }

    pub fn count_report(&self, weighting: LabelWeighting) -> Result<CountReport> {
        let rows = (0..=self.n * self.n)
            .map(|k| {
                Ok(ThetaRow {
                    k,
                    classes: self.by_edges[k].len(),
                    theta: self.theta(k, weighting)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let by_vertices = self.ordered_via_vertex_products(weighting)?;
        let by_theta = self.ordered_via_theta(weighting)?;
        let dual_path_agrees = by_vertices == by_theta;
        if !dual_path_agrees {
            return Err(Error::Inconsistent(format!(
                "vertex-product route gives {by_vertices}, theta route gives {by_theta}"
            )));
        }
        let unordered = halve(&by_theta)?;
        Ok(CountReport {
            n: self.n,
            weighting,
            rows,
            ordered: by_theta,
            unordered,
            dual_path_agrees,
        })
    }
}

fn halve(ordered: &BigInt) -> Result<BigInt> {
    let (half, rem) = ordered.div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::Inconsistent(format!("ordered pair count {ordered} is odd")));
    }
    Ok(half)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaRow {
    pub k: usize,
    pub classes: usize,
    pub theta: BigRational,
}

/// Per-k θ table plus the ordered/unordered disjoint-pair counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    pub weighting: LabelWeighting,
    pub rows: Vec<ThetaRow>,
    pub ordered: BigInt,
    pub unordered: BigInt,
    pub dual_path_agrees: bool,
}

fn check_side(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("side size must be at least 2, got {n}")));
    }
    Ok(())
}

fn single_k_table(n: usize, k: usize) -> Result<Vec<ClassRecord>> {
    Ok(enumerate_class_reps(n, k, &Limits::default())?
        .into_iter()
        .map(ClassRecord::new)
        .collect())
}

pub fn omega(g: &BipartiteGraph) -> BigRational {
    ClassRecord::new(*g).omega(LabelWeighting::NeighborhoodClasses)
}

pub fn theta(n: usize, k: usize) -> Result<BigRational> {
    Ok(single_k_table(n, k)?
        .iter()
        .map(|c| c.omega(LabelWeighting::NeighborhoodClasses))
        .sum())
}

pub fn b_count(n: usize, k: usize) -> Result<BigInt> {
    let sum: BigRational = single_k_table(n, k)?
        .iter()
        .map(|c| c.labelled_count(LabelWeighting::NeighborhoodClasses))
        .sum();
    to_integer(&sum, &format!("b({n}, {k})"))
}

pub fn binomial_identity_check(n: usize) -> Result<bool> {
    ClassTable::build(n, &Limits::default())?.binomial_identity_holds(LabelWeighting::NeighborhoodClasses)
}

pub fn q_count(n: usize, k: usize) -> Result<BigInt> {
    let f = factorial(n);
    let sum: BigRational = single_k_table(n, k)?
        .iter()
        .map(|c| {
            c.class_factor(LabelWeighting::NeighborhoodClasses) * BigRational::from_integer(c.vertex_product())
        })
        .sum();
    to_integer(
        &(sum * BigRational::from_integer(pow(&f, 2 * (n + 1)))),
        &format!("q({n}, {k})"),
    )
}

pub fn disjoint_ordered(n: usize) -> Result<BigInt> {
    check_side(n)?;
    ClassTable::build(n, &Limits::default())?.disjoint_ordered(LabelWeighting::NeighborhoodClasses)
}

pub fn disjoint_unordered(n: usize) -> Result<BigInt> {
    halve(&disjoint_ordered(n)?)
}

/// `|Σ_{n²}| = (n!)^{2n}`.
pub fn s_perm_count(n: usize) -> BigInt {
    pow(&factorial(n), 2 * n)
}

/// Number of `n²`-cliques of the disjointness graph from the number of
/// Sudoku matrices: `σ / (n²)!`.
pub fn z_from_sigma(sigma: &BigInt, n: usize) -> Result<BigInt> {
    let labelings = factorial(n * n);
    let (z, rem) = sigma.div_rem(&labelings);
    if !rem.is_zero() || sigma.is_negative() {
        return Err(Error::Invalid(format!("{sigma} is not a non-negative multiple of ({}²)!", n)));
    }
    Ok(z)
}
