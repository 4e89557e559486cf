//! Report generation behind the `spairs` binary.
//!
//! [`run`] executes one subcommand and renders its report as JSON, CSV or
//! plain text. Rendering is deterministic: the same [`RunConfig`] always
//! produces the same bytes, whatever the thread count.

mod report;
mod verify;

use std::fmt;

use serde::Serialize;
use spairs_core::Error;

pub use report::render;
pub use verify::{verify, Check};

pub const TOOL: &str = "spairs";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    EnumerateGraphs { n: usize, k: usize },
    Theta { n: usize },
    Count { n: usize },
    Verify { n: usize },
    Cliques { n: usize },
    SudokuGen { n: usize, seed: u64, node_budget: u64, max_restarts: u32 },
}

/// Everything that determines a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub command: Command,
    pub format: Format,
    pub allow_n5_graphs: bool,
    pub allow_n3_graph: bool,
    /// Worker threads; `None` uses every available core. Not part of the
    /// embedded config since it never changes the output.
    #[serde(skip)]
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            format: Format::Json,
            allow_n5_graphs: false,
            allow_n3_graph: false,
            threads: None,
        }
    }

    pub fn limits(&self) -> spairs_core::Limits {
        spairs_core::Limits {
            allow_n5_graphs: self.allow_n5_graphs,
            allow_n3_disjointness_graph: self.allow_n3_graph,
        }
    }
}

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    Failure = 1,
    Usage = 2,
    Infeasible = 3,
    VerificationFailed = 4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunError {
    Core(Error),
    /// One or more `verify` checks failed; the report is still produced.
    ChecksFailed(usize),
    Io(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Core(e) => write!(f, "{e}"),
            RunError::ChecksFailed(n) => write!(f, "{n} verification check(s) failed"),
            RunError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for RunError {
    fn from(e: Error) -> Self {
        RunError::Core(e)
    }
}

impl RunError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            RunError::Core(Error::OutOfRange(_)) => ExitCode::Usage,
            RunError::Core(Error::Infeasible(_)) => ExitCode::Infeasible,
            RunError::Core(Error::Inconsistent(_)) | RunError::ChecksFailed(_) => ExitCode::VerificationFailed,
            RunError::Core(_) | RunError::Io(_) => ExitCode::Failure,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            ExitCode::Usage => "usage",
            ExitCode::Infeasible => "feasibility",
            ExitCode::VerificationFailed => "verification",
            _ => "failure",
        }
    }
}

/// Raw artifact files a run can additionally produce (class file, clique
/// list, Sudoku matrix, family file).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Artifacts {
    pub class_file: Option<String>,
    pub clique_list: Option<String>,
    pub sudoku: Option<String>,
    pub family_file: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub report: String,
    pub artifacts: Artifacts,
    pub exit: ExitCode,
}

/// Runs one subcommand on a pool of `config.threads` workers.
pub fn run(config: &RunConfig) -> RunOutput {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = config.threads {
        builder = builder.num_threads(t);
    }
    let outcome = match builder.build() {
        Ok(pool) => pool.install(|| report::execute(config)),
        Err(e) => Err(RunError::Io(e.to_string())),
    };
    match outcome {
        Ok((result, artifacts)) => {
            let exit = match &result.failed_checks() {
                0 => ExitCode::Success,
                _ => ExitCode::VerificationFailed,
            };
            RunOutput {
                report: render(config, &result),
                artifacts,
                exit,
            }
        }
        Err(e) => RunOutput {
            report: report::failure_record(config, &e),
            artifacts: Artifacts::default(),
            exit: e.exit_code(),
        },
    }
}
