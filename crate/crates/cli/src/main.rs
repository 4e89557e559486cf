use std::fs;
use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand};
use spairs_cli::{run, Command, ExitCode, Format, RunConfig};

#[derive(Parser)]
#[command(name = "spairs", version, about = "Exact counts of disjoint pairs of S-permutation matrices")]
struct Cli {
    /// Worker threads (defaults to all cores); never changes the output.
    #[arg(long, global = true, env = "SPAIRS_THREADS")]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// One representative per isomorphism class, with Ψ, [g] and ω.
    EnumerateGraphs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Allow n = 5.
        #[arg(long)]
        allow_n5: bool,
        /// Also write the graph-class file here.
        #[arg(long)]
        classes_file: Option<PathBuf>,
    },
    /// θ(n, k) for every k.
    Theta {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        allow_n5: bool,
    },
    /// Ordered and unordered disjoint-pair counts.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        allow_n5: bool,
    },
    /// Every formula-versus-oracle check available for n.
    Verify {
        #[arg(long)]
        n: usize,
        /// Also build the n = 3 disjointness graph (~272 MB).
        #[arg(long)]
        allow_n3_graph: bool,
    },
    /// n²-cliques of the disjointness graph (n = 2 only).
    Cliques {
        #[arg(long)]
        n: usize,
        /// Also write the clique list here.
        #[arg(long)]
        clique_file: Option<PathBuf>,
    },
    /// A Sudoku matrix from a seeded random disjoint family.
    SudokuGen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        node_budget: u64,
        #[arg(long, default_value_t = 32)]
        max_restarts: u32,
        /// Also write the Sudoku matrix (text format) here.
        #[arg(long)]
        sudoku_file: Option<PathBuf>,
        /// Also write the family file here.
        #[arg(long)]
        family_file: Option<PathBuf>,
    },
}

fn write_or_die(path: &PathBuf, contents: &str) {
    if let Err(e) = fs::write(path, contents) {
        eprintln!("spairs: cannot write {}: {e}", path.display());
        process::exit(ExitCode::Failure as i32);
    }
}

fn main() {
    let cli = Cli::parse();
    let mut extra: Vec<(PathBuf, fn(&spairs_cli::Artifacts) -> Option<&String>)> = Vec::new();
    let (command, allow_n5, allow_n3) = match cli.command {
        Sub::EnumerateGraphs {
            n,
            k,
            allow_n5,
            classes_file,
        } => {
            if let Some(p) = classes_file {
                extra.push((p, |a| a.class_file.as_ref()));
            }
            (Command::EnumerateGraphs { n, k }, allow_n5, false)
        }
        Sub::Theta { n, allow_n5 } => (Command::Theta { n }, allow_n5, false),
        Sub::Count { n, allow_n5 } => (Command::Count { n }, allow_n5, false),
        Sub::Verify { n, allow_n3_graph } => (Command::Verify { n }, false, allow_n3_graph),
        Sub::Cliques { n, clique_file } => {
            if let Some(p) = clique_file {
                extra.push((p, |a| a.clique_list.as_ref()));
            }
            (Command::Cliques { n }, false, false)
        }
        Sub::SudokuGen {
            n,
            seed,
            node_budget,
            max_restarts,
            sudoku_file,
            family_file,
        } => {
            if let Some(p) = sudoku_file {
                extra.push((p, |a| a.sudoku.as_ref()));
            }
            if let Some(p) = family_file {
                extra.push((p, |a| a.family_file.as_ref()));
            }
            (
                Command::SudokuGen {
                    n,
                    seed,
                    node_budget,
                    max_restarts,
                },
                false,
                false,
            )
        }
    };
    let config = RunConfig {
        command,
        format: cli.format,
        allow_n5_graphs: allow_n5,
        allow_n3_graph: allow_n3,
        threads: cli.threads,
    };

    let output = run(&config);
    match &cli.out {
        Some(path) => write_or_die(path, &output.report),
        None => print!("{}", output.report),
    }
    for (path, pick) in &extra {
        if let Some(contents) = pick(&output.artifacts) {
            write_or_die(path, contents);
        }
    }
    if output.exit != ExitCode::Success {
        eprintln!("spairs: exiting with status {}", output.exit as i32);
    }
    process::exit(output.exit as i32);
}
