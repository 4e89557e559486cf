use std::fmt::Write as _;

use serde::Serialize;
use spairs_core::formulas::{factorial, s_perm_count, ClassRecord, ClassTable, CountReport, LabelWeighting};
use spairs_core::graphs::{enumerate_class_reps, write_class_file};
use spairs_core::matrices::{
    compose_sudoku, count_cliques, list_cliques, sample_disjoint_family, write_clique_list, write_family_file,
    SamplerConfig,
};
use spairs_core::{BigRational, DisjointnessGraph, Error};

use crate::verify::{verify, Check};
use crate::{Artifacts, Command, Format, RunConfig, RunError, TOOL, VERSION};

fn ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn joined<T: ToString>(values: &[T], sep: &str) -> String {
    values.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphRow {
    pub mask: String,
    pub edges: usize,
    pub psi: Vec<u32>,
    pub classes: Vec<u32>,
    pub omega: String,
    pub orbit_size: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphsResult {
    pub n: usize,
    pub k: usize,
    pub count: usize,
    pub graphs: Vec<GraphRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaRow {
    pub k: usize,
    pub classes: usize,
    pub theta: String,
    pub theta_orbit: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThetaResult {
    pub n: usize,
    pub rows: Vec<ThetaRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountRow {
    pub k: usize,
    pub classes: usize,
    pub theta: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountSection {
    pub weighting: &'static str,
    pub ordered: String,
    pub unordered: String,
    pub dual_path_agrees: bool,
    pub rows: Vec<CountRow>,
}

impl From<CountReport> for CountSection {
    fn from(r: CountReport) -> Self {
        CountSection {
            weighting: r.weighting.name(),
            ordered: r.ordered.to_string(),
            unordered: r.unordered.to_string(),
            dual_path_agrees: r.dual_path_agrees,
            rows: r
                .rows
                .iter()
                .map(|row| CountRow {
                    k: row.k,
                    classes: row.classes,
                    theta: ratio(&row.theta),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CountResult {
    pub n: usize,
    pub s_perm_count: String,
    pub published: CountSection,
    pub orbit: CountSection,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyResult {
    pub n: usize,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CliquesResult {
    pub n: usize,
    pub size: usize,
    pub vertices: usize,
    pub edges: u64,
    pub z: String,
    pub sudoku_count: String,
    pub cliques: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SudokuResult {
    pub n: usize,
    pub seed: u64,
    pub grid: Vec<Vec<i64>>,
    pub family: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum RunResult {
    Graphs(GraphsResult),
    Theta(ThetaResult),
    Count(CountResult),
    Verify(VerifyResult),
    Cliques(CliquesResult),
    Sudoku(SudokuResult),
}

impl RunResult {
    pub fn failed_checks(&self) -> usize {
        match self {
            RunResult::Verify(v) => v.failed,
            _ => 0,
        }
    }
}

pub(crate) fn execute(config: &RunConfig) -> Result<(RunResult, Artifacts), RunError> {
    let limits = config.limits();
    let mut artifacts = Artifacts::default();
    let result = match config.command {
        Command::EnumerateGraphs { n, k } => {
            let reps = enumerate_class_reps(n, k, &limits)?;
            artifacts.class_file = Some(write_class_file(n, k, &reps));
            let graphs = reps
                .into_iter()
                .map(|g| {
                    let rec = ClassRecord::new(g);
                    GraphRow {
                        mask: g.to_hex(),
                        edges: g.edge_count(),
                        omega: ratio(&rec.omega(LabelWeighting::NeighborhoodClasses)),
                        orbit_size: g.orbit_size(),
                        psi: rec.profile.psi,
                        classes: rec.classes.deltas,
                    }
                })
                .collect::<Vec<_>>();
            RunResult::Graphs(GraphsResult {
                n,
                k,
                count: graphs.len(),
                graphs,
            })
        }
        Command::Theta { n } => {
            let table = ClassTable::build(n, &limits)?;
            let rows = (0..=n * n)
                .map(|k| {
                    Ok(ThetaRow {
                        k,
                        classes: table.classes(k)?.len(),
                        theta: ratio(&table.theta(k, LabelWeighting::NeighborhoodClasses)?),
                        theta_orbit: ratio(&table.theta(k, LabelWeighting::Orbit)?),
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            RunResult::Theta(ThetaResult { n, rows })
        }
        Command::Count { n } => {
            if n < 2 {
                return Err(Error::OutOfRange(format!("count needs n >= 2, got {n}")).into());
            }
            let table = ClassTable::build(n, &limits)?;
            RunResult::Count(CountResult {
                n,
                s_perm_count: s_perm_count(n).to_string(),
                published: table.count_report(LabelWeighting::NeighborhoodClasses)?.into(),
                orbit: table.count_report(LabelWeighting::Orbit)?.into(),
            })
        }
        Command::Verify { n } => {
            let checks = verify(n, &limits)?;
            let failed = checks.iter().filter(|c| !c.passed()).count();
            RunResult::Verify(VerifyResult {
                n,
                passed: checks.len() - failed,
                failed,
                checks,
            })
        }
        Command::Cliques { n } => {
            if n != 2 {
                return Err(Error::Infeasible(format!("clique search is only supported for n = 2, got {n}")).into());
            }
            let size = n * n;
            let graph = DisjointnessGraph::build(n, &limits)?;
            let cliques = list_cliques(&graph, size)?;
            let z = count_cliques(&graph, size)?;
            artifacts.clique_list = Some(write_clique_list(&cliques));
            RunResult::Cliques(CliquesResult {
                n,
                size,
                vertices: graph.vertex_count(),
                edges: graph.edge_count(),
                sudoku_count: (&z * factorial(size)).to_string(),
                z: z.to_string(),
                cliques,
            })
        }
        Command::SudokuGen {
            n,
            seed,
            node_budget,
            max_restarts,
        } => {
            let family = sample_disjoint_family(
                n,
                seed,
                &SamplerConfig {
                    node_budget,
                    max_restarts,
                },
            )?;
            let labeling: Vec<usize> = (1..=n * n).collect();
            let sudoku = compose_sudoku(&family, &labeling)?;
            artifacts.sudoku = Some(sudoku.to_text());
            artifacts.family_file = Some(write_family_file(&family));
            RunResult::Sudoku(SudokuResult {
                n,
                seed,
                grid: sudoku.rows(),
                family: family.iter().map(|m| m.symbol_codes()).collect(),
            })
        }
    };
    Ok((result, artifacts))
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<&'a T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorRecord>,
}

#[derive(Serialize)]
struct ErrorRecord {
    kind: &'static str,
    exit_code: i32,
    message: String,
}

fn config_line(config: &RunConfig) -> String {
    let json = serde_json::to_value(config).expect("config serializes");
    let fields = json
        .as_object()
        .expect("config is an object")
        .iter()
        .map(|(k, v)| format!("{k}={}", v.as_str().map_or_else(|| v.to_string(), str::to_string)))
        .collect::<Vec<_>>()
        .join(" ");
    format!("# {TOOL} {VERSION} {fields}\n")
}

/// Machine-readable failure record, always JSON.
pub(crate) fn failure_record(config: &RunConfig, error: &RunError) -> String {
    let env: Envelope<'_, ()> = Envelope {
        tool: TOOL,
        version: VERSION,
        config,
        status: "error",
        result: None,
        error: Some(ErrorRecord {
            kind: error.kind(),
            exit_code: error.exit_code() as i32,
            message: error.to_string(),
        }),
    };
    serde_json::to_string_pretty(&env).expect("serializable") + "\n"
}

pub fn render(config: &RunConfig, result: &RunResult) -> String {
    match config.format {
        Format::Json => {
            let env = Envelope {
                tool: TOOL,
                version: VERSION,
                config,
                status: if result.failed_checks() == 0 { "ok" } else { "checks-failed" },
                result: Some(result),
                error: None,
            };
            serde_json::to_string_pretty(&env).expect("serializable") + "\n"
        }
        Format::Csv => config_line(config) + &render_csv(result),
        Format::Text => render_text(config, result),
    }
}

fn render_csv(result: &RunResult) -> String {
    let mut out = String::new();
    match result {
        RunResult::Graphs(g) => {
            out.push_str("mask,edges,psi,classes,omega,orbit_size\n");
            for row in &g.graphs {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    row.mask,
                    row.edges,
                    joined(&row.psi, ";"),
                    joined(&row.classes, ";"),
                    row.omega,
                    row.orbit_size
                );
            }
        }
        RunResult::Theta(t) => {
            out.push_str("k,classes,theta,theta_orbit\n");
            for row in &t.rows {
                let _ = writeln!(out, "{},{},{},{}", row.k, row.classes, row.theta, row.theta_orbit);
            }
        }
        RunResult::Count(c) => {
            out.push_str("weighting,ordered,unordered,dual_path_agrees\n");
            for s in [&c.published, &c.orbit] {
                let _ = writeln!(out, "{},{},{},{}", s.weighting, s.ordered, s.unordered, s.dual_path_agrees);
            }
        }
        RunResult::Verify(v) => {
            out.push_str("check,status,expected,actual\n");
            for c in &v.checks {
                let _ = writeln!(out, "{},{},{},{}", c.name, c.status, c.expected, c.actual);
            }
        }
        RunResult::Cliques(c) => {
            out.push_str("clique,vertices\n");
            for (i, clique) in c.cliques.iter().enumerate() {
                let _ = writeln!(out, "{},{}", i, joined(clique, " "));
            }
        }
        RunResult::Sudoku(s) => {
            let header: Vec<String> = (1..=s.grid.len()).map(|c| format!("c{c}")).collect();
            out.push_str(&header.join(","));
            out.push('\n');
            for row in &s.grid {
                out.push_str(&joined(row, ","));
                out.push('\n');
            }
        }
    }
    out
}

fn render_text(config: &RunConfig, result: &RunResult) -> String {
    let mut out = String::new();
    match result {
        RunResult::Graphs(g) => {
            // the graph-class file format, verbatim
            let reps: Vec<_> = g
                .graphs
                .iter()
                .map(|row| spairs_core::BipartiteGraph::from_hex(g.n, &row.mask).expect("own output"))
                .collect();
            out.push_str(&write_class_file(g.n, g.k, &reps));
        }
        RunResult::Theta(t) => {
            out.push_str(&config_line(config));
            let _ = writeln!(out, "{:>3} {:>8} {:>24} {:>24}", "k", "classes", "theta", "theta_orbit");
            for row in &t.rows {
                let _ = writeln!(out, "{:>3} {:>8} {:>24} {:>24}", row.k, row.classes, row.theta, row.theta_orbit);
            }
        }
        RunResult::Count(c) => {
            out.push_str(&config_line(config));
            let _ = writeln!(out, "s_perm_count {}", c.s_perm_count);
            for s in [&c.published, &c.orbit] {
                let _ = writeln!(out, "[{}]", s.weighting);
                let _ = writeln!(out, "ordered {}", s.ordered);
                let _ = writeln!(out, "unordered {}", s.unordered);
                let _ = writeln!(out, "dual_path_agrees {}", s.dual_path_agrees);
            }
        }
        RunResult::Verify(v) => {
            out.push_str(&config_line(config));
            for c in &v.checks {
                let _ = writeln!(out, "{} {}: expected {}, got {}", c.status.to_uppercase(), c.name, c.expected, c.actual);
            }
            let _ = writeln!(out, "{} passed, {} failed", v.passed, v.failed);
        }
        RunResult::Cliques(c) => out.push_str(&write_clique_list(&c.cliques)),
        RunResult::Sudoku(s) => {
            for row in &s.grid {
                out.push_str(&joined(row, " "));
                out.push('\n');
            }
        }
    }
    out
}
