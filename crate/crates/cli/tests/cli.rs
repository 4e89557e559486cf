use std::process::Command as Process;

use serde_json::Value;
use spairs_cli::{run, Command, ExitCode, Format, RunConfig};
use spairs_core::graphs::parse_class_file;
use spairs_core::matrices::{parse_family_file, validate_sudoku};
use spairs_core::SudokuMatrix;

fn json(config: &RunConfig) -> Value {
    let out = run(config);
    serde_json::from_str(&out.report).expect("report is JSON")
}

fn with_format(command: Command, format: Format) -> RunConfig {
    RunConfig {
        format,
        ..RunConfig::new(command)
    }
}

#[test]
fn count_report_carries_both_weightings() {
    let v = json(&RunConfig::new(Command::Count { n: 2 }));
    assert_eq!(v["status"], "ok");
    assert_eq!(v["tool"], "spairs");
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config"]["command"], "count");
    assert_eq!(v["config"]["n"], 2);
    assert_eq!(v["result"]["published"]["ordered"], "144");
    assert_eq!(v["result"]["published"]["unordered"], "72");
    assert_eq!(v["result"]["published"]["dual_path_agrees"], true);
    assert_eq!(v["result"]["orbit"]["ordered"], "112");
    assert_eq!(v["result"]["orbit"]["unordered"], "56");
    assert_eq!(v["result"]["published"]["rows"][4]["theta"], "1/4");
}

#[test]
fn theta_table_row_six() {
    let v = json(&RunConfig::new(Command::Theta { n: 3 }));
    let row = &v["result"]["rows"][6];
    assert_eq!(row["k"], 6);
    assert_eq!(row["classes"], 6);
    assert_eq!(row["theta"], "8/1");
    assert_eq!(row["theta_orbit"], "43/6");
}

#[test]
fn enumerate_graphs_outputs() {
    let cmd = Command::EnumerateGraphs { n: 3, k: 6 };
    let out = run(&with_format(cmd.clone(), Format::Text));
    assert_eq!(out.exit, ExitCode::Success);
    let (n, k, reps) = parse_class_file(&out.report).unwrap();
    assert_eq!((n, k, reps.len()), (3, 6, 6));
    assert_eq!(out.artifacts.class_file.as_deref(), Some(out.report.as_str()));

    let v = json(&RunConfig::new(cmd.clone()));
    let omegas: Vec<&str> = v["result"]["graphs"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["omega"].as_str().unwrap())
        .collect();
    let mut sorted = omegas.clone();
    sorted.sort();
    assert_eq!(sorted, vec!["1/1", "1/1", "1/1", "1/2", "1/2", "4/1"]);

    let csv = run(&with_format(cmd, Format::Csv)).report;
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("# spairs "));
    assert_eq!(lines.next().unwrap(), "mask,edges,psi,classes,omega,orbit_size");
    assert_eq!(lines.count(), 6);
}

#[test]
fn sudoku_gen_is_deterministic_and_valid() {
    let cmd = Command::SudokuGen {
        n: 2,
        seed: 7,
        node_budget: 1_000_000,
        max_restarts: 32,
    };
    let a = run(&with_format(cmd.clone(), Format::Text));
    let b = run(&with_format(cmd.clone(), Format::Text));
    assert_eq!(a, b);
    let p = SudokuMatrix::parse_text(&a.report).unwrap();
    assert!(validate_sudoku(&p.rows()));
    let family = parse_family_file(a.artifacts.family_file.as_ref().unwrap()).unwrap();
    assert_eq!(family.len(), 4);

    let n3 = Command::SudokuGen {
        n: 3,
        seed: 11,
        node_budget: 1_000_000,
        max_restarts: 32,
    };
    let v = json(&RunConfig::new(n3));
    assert_eq!(v["result"]["grid"].as_array().unwrap().len(), 9);
}

#[test]
fn cliques_report() {
    let v = json(&RunConfig::new(Command::Cliques { n: 2 }));
    assert_eq!(v["result"]["z"], "12");
    assert_eq!(v["result"]["sudoku_count"], "288");
    assert_eq!(v["result"]["vertices"], 16);
    assert_eq!(v["result"]["edges"], 56);
    let text = run(&with_format(Command::Cliques { n: 2 }, Format::Text)).report;
    assert_eq!(text.lines().count(), 12);
    assert!(text.lines().all(|l| l.split(' ').count() == 4));
}

#[test]
fn verify_reports_failures_with_verification_code() {
    let out = run(&RunConfig::new(Command::Verify { n: 2 }));
    assert_eq!(out.exit, ExitCode::VerificationFailed);
    let v: Value = serde_json::from_str(&out.report).unwrap();
    assert_eq!(v["status"], "checks-failed");
    let status = |name: &str| {
        v["result"]["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name)
            .map(|c| c["status"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(status("oracle-disjoint-pairs/orbit"), "pass");
    assert_eq!(status("oracle-q/orbit"), "pass");
    assert_eq!(status("binomial-identity/orbit"), "pass");
    assert_eq!(status("graph-edges/orbit"), "pass");
    assert_eq!(status("cliques-times-labelings"), "pass");
    assert_eq!(status("composed-sudoku-count"), "pass");
    assert_eq!(status("dual-path/published"), "pass");
    assert_eq!(status("oracle-disjoint-pairs/published"), "fail");
}

#[test]
fn error_exit_codes_and_records() {
    let n5 = run(&RunConfig::new(Command::EnumerateGraphs { n: 5, k: 3 }));
    assert_eq!(n5.exit, ExitCode::Infeasible);
    let v: Value = serde_json::from_str(&n5.report).unwrap();
    assert_eq!(v["status"], "error");
    assert_eq!(v["error"]["kind"], "feasibility");
    assert_eq!(v["error"]["exit_code"], 3);

    let opted = RunConfig {
        allow_n5_graphs: true,
        ..RunConfig::new(Command::EnumerateGraphs { n: 5, k: 3 })
    };
    assert_eq!(run(&opted).exit, ExitCode::Success);

    assert_eq!(run(&RunConfig::new(Command::Theta { n: 9 })).exit, ExitCode::Usage);
    assert_eq!(run(&RunConfig::new(Command::EnumerateGraphs { n: 3, k: 10 })).exit, ExitCode::Usage);
    assert_eq!(run(&RunConfig::new(Command::Cliques { n: 3 })).exit, ExitCode::Infeasible);
    let starved = Command::SudokuGen {
        n: 3,
        seed: 0,
        node_budget: 2,
        max_restarts: 1,
    };
    assert_eq!(run(&RunConfig::new(starved)).exit, ExitCode::Failure);
}

#[test]
fn binary_usage_and_env_threads() {
    let bin = env!("CARGO_BIN_EXE_spairs");
    let bad = Process::new(bin).args(["count"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));

    let a = Process::new(bin).args(["count", "--n", "3"]).env("SPAIRS_THREADS", "1").output().unwrap();
    let b = Process::new(bin).args(["count", "--n", "3", "--threads", "2"]).output().unwrap();
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);

    let dir = std::env::temp_dir().join(format!("spairs-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let report = dir.join("report.json");
    let sudoku = dir.join("p.txt");
    let status = Process::new(bin)
        .args(["sudoku-gen", "--n", "2", "--seed", "3", "--out"])
        .arg(&report)
        .arg("--sudoku-file")
        .arg(&sudoku)
        .status()
        .unwrap();
    assert!(status.success());
    assert!(SudokuMatrix::parse_text(&std::fs::read_to_string(&sudoku).unwrap()).is_ok());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(v["config"]["seed"], 3);
    std::fs::remove_dir_all(&dir).ok();
}
