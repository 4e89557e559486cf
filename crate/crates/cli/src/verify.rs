//! Formula-versus-oracle checks run by the `verify` subcommand.
//!
//! Every formula check is run under both class weightings, so a report shows
//! which of the two the brute force agrees with.

use num_bigint::BigInt;
use serde::Serialize;
use spairs_core::formulas::{binomial, factorial, s_perm_count, ClassTable, LabelWeighting};
use spairs_core::matrices::{
    agreement_histogram, brute_force_disjoint_count, compose_sudoku, count_cliques, enumerate_pi, list_cliques,
    pi_to_sperm, q_from_histogram, sperm_to_pi, MAX_ENUMERATED_SIDE,
};
use spairs_core::{DisjointnessGraph, Error, Limits};

/// Known number of 4×4 Sudoku matrices.
const SUDOKU_4X4: u64 = 288;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: &'static str,
    pub expected: String,
    pub actual: String,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            name: name.into(),
            status: if expected == actual { "pass" } else { "fail" },
            expected,
            actual,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

const WEIGHTINGS: [LabelWeighting; 2] = [LabelWeighting::NeighborhoodClasses, LabelWeighting::Orbit];

fn tag(w: LabelWeighting) -> &'static str {
    match w {
        LabelWeighting::NeighborhoodClasses => "published",
        LabelWeighting::Orbit => "orbit",
    }
}

fn first_mismatch(values: impl IntoIterator<Item = (usize, BigInt, BigInt)>) -> (String, String) {
    for (k, expected, actual) in values {
        if expected != actual {
            return (format!("k={k}: {expected}"), format!("k={k}: {actual}"));
        }
    }
    ("all k".into(), "all k".into())
}

pub fn verify(n: usize, limits: &Limits) -> Result<Vec<Check>, Error> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("verify needs n >= 2, got {n}")));
    }
    let table = ClassTable::build(n, limits)?;
    let sq = n * n;
    let mut checks = Vec::new();
    let mut ordered = Vec::new();

    for w in WEIGHTINGS {
        let (e, a) = first_mismatch((0..=sq).map(|k| Ok((k, binomial(sq, k), table.b_count(k, w)?))).collect::<Result<Vec<_>, Error>>()?);
        checks.push(Check::new(format!("binomial-identity/{}", tag(w)), e, a));

        let d = table.disjoint_ordered(w);
        let d = match d {
            Ok(d) => d,
            Err(Error::Inconsistent(msg)) => {
                checks.push(Check::new(format!("dual-path/{}", tag(w)), "agreement", msg));
                continue;
            }
            Err(e) => return Err(e),
        };
        checks.push(Check::new(format!("dual-path/{}", tag(w)), "agreement", "agreement"));
        checks.push(Check::new(
            format!("ordered-count-even/{}", tag(w)),
            0,
            &d % BigInt::from(2),
        ));
        let alternating: BigInt = (0..=sq)
            .map(|k| table.q_count(k, w).map(|q| if k % 2 == 0 { q } else { -q }))
            .sum::<Result<BigInt, Error>>()?;
        checks.push(Check::new(format!("inclusion-exclusion/{}", tag(w)), &d, alternating));
        checks.push(Check::new(
            format!("q0-is-pairs-of-matrices/{}", tag(w)),
            s_perm_count(n).pow(2),
            table.q_count(0, w)?,
        ));
        ordered.push((w, d));
    }

    if n <= MAX_ENUMERATED_SIDE {
        let brute = brute_force_disjoint_count(n)?;
        for (w, d) in &ordered {
            checks.push(Check::new(format!("oracle-disjoint-pairs/{}", tag(*w)), &brute, d));
        }
        let hist = agreement_histogram(n)?;
        checks.push(Check::new("histogram-total", s_perm_count(n).pow(2), hist.iter().sum::<BigInt>()));
        checks.push(Check::new("histogram-zero-is-oracle", &brute, &hist[0]));
        checks.push(Check::new("histogram-full-is-identity", s_perm_count(n), &hist[sq]));
        for w in WEIGHTINGS {
            let (e, a) = first_mismatch(
                (0..=sq)
                    .map(|k| Ok((k, q_from_histogram(&hist, k), table.q_count(k, w)?)))
                    .collect::<Result<Vec<_>, Error>>()?,
            );
            checks.push(Check::new(format!("oracle-q/{}", tag(w)), e, a));
        }

        let pis = enumerate_pi(n)?;
        let round_trips = pis
            .iter()
            .filter(|p| pi_to_sperm(p).and_then(|a| sperm_to_pi(&a)).as_ref() == Ok(*p))
            .count();
        checks.push(Check::new("bijection-round-trip", pis.len(), round_trips));
    }

    let build_graph = n == 2 || (n == 3 && limits.allow_n3_disjointness_graph);
    if build_graph {
        let graph = DisjointnessGraph::build(n, limits)?;
        for (w, d) in &ordered {
            checks.push(Check::new(
                format!("graph-edges/{}", tag(*w)),
                d / BigInt::from(2),
                graph.edge_count(),
            ));
        }
        if n == 2 {
            let z = count_cliques(&graph, sq)?;
            checks.push(Check::new("cliques-times-labelings", SUDOKU_4X4, &z * factorial(sq)));
            let mut composed = std::collections::BTreeSet::new();
            for clique in list_cliques(&graph, sq)? {
                let family: Vec<_> = clique.iter().map(|&v| graph.vertex(v).clone()).collect();
                for labeling in spairs_core::perm::permutations(sq) {
                    let labeling: Vec<usize> = labeling.iter().map(|&x| x as usize + 1).collect();
                    composed.insert(compose_sudoku(&family, &labeling)?);
                }
            }
            checks.push(Check::new("composed-sudoku-count", SUDOKU_4X4, composed.len()));
        }
    }
    Ok(checks)
}
