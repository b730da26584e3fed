//! End-to-end tests of the `broccoli` binary: report shape and frozen
//! values, exit codes, flag/config precedence, bench CSV output, trace
//! export, and logging.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn broccoli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_broccoli"))
}

fn stdout_json(output: &Output) -> Value {
    serde_json::from_slice(&output.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&output.stdout)
        )
    })
}

/// The all-defaults mountain car run is frozen: resolved configuration,
/// sampled initial state, optimal outcome, and the exact number of
/// evaluated trees. Any drift in dynamics, sampling, resolution defaults,
/// or search order shows up here.
#[test]
fn default_mountain_car_run_matches_frozen_report() {
    let output = broccoli().args(["--env", "mountaincar"]).output().unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let report = stdout_json(&output);

    assert_eq!(report["config"]["env"], "mountaincar");
    assert_eq!(report["config"]["mode"], "min");
    assert_eq!(report["config"]["depth"], 2);
    assert_eq!(report["config"]["maxNodes"], 3);
    assert_eq!(
        report["config"]["increments"],
        serde_json::json!([0.05, 0.005])
    );
    assert_eq!(report["config"]["numInitialStates"], 1);
    assert_eq!(report["config"]["seed"], 0);
    assert_eq!(report["config"]["stepBound"], 10_000);
    assert_eq!(report["config"]["tracePruning"], true);
    assert_eq!(report["config"]["earlyStop"], true);
    assert_eq!(report["config"]["symmetry"], true);
    assert_eq!(report["config"]["oracleCap"], 50_000_000);

    assert_eq!(
        report["initialStates"],
        serde_json::json!([[-0.42333783835727146, 0.0]])
    );
    assert_eq!(report["outcome"]["verdict"], "satisfied");
    assert_eq!(report["outcome"]["steps"], 86);
    assert_eq!(report["outcome"]["treeSize"], 2);
    assert_eq!(report["stats"]["treesEvaluated"], 70_693);
    assert_eq!(report["stats"]["capTerminated"], false);
    assert_eq!(report["perStateSteps"], serde_json::json!([86]));
    assert_eq!(report["completed"], true);
    assert!(report["bestTree"].is_object(), "missing best tree");
    assert!(report["stats"]["wallMillis"].is_u64());

    // The human-readable tree goes to stderr so stdout stays parseable.
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(
        stderr.contains("if x"),
        "rendered tree missing from stderr: {stderr}"
    );
}

#[test]
fn unknown_environment_exits_with_an_error() {
    let output = broccoli().args(["--env", "lunarlander"]).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("error:"), "no error message: {stderr}");
    assert!(
        stderr.contains("lunarlander"),
        "does not name the bad input: {stderr}"
    );
}

/// The car physically cannot reach the flag in 50 steps, so the best tree
/// is violated and the process signals "no solution" (exit 2) while still
/// emitting the full report.
#[test]
fn unsolvable_step_bound_exits_no_solution() {
    let output = broccoli()
        .args(["--env", "mountaincar", "--step-bound", "50"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    let report = stdout_json(&output);
    assert_eq!(report["outcome"]["verdict"], "violated");
    assert_eq!(report["outcome"]["steps"], 50);
    assert_eq!(report["completed"], true);
}

#[test]
fn flags_override_config_file_values() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    std::fs::write(
        &config_path,
        r#"{"env": "mountaincar", "depth": 2, "maxNodes": 3, "increments": [0.1, 0.01], "stepBound": 300}"#,
    )
    .unwrap();
    let output = broccoli()
        .arg("--config")
        .arg(&config_path)
        .args(["--depth", "1", "--max-nodes", "1"])
        .output()
        .unwrap();
    assert!(
        matches!(output.status.code(), Some(0) | Some(2)),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let report = stdout_json(&output);
    assert_eq!(
        report["config"]["depth"], 1,
        "flag did not win over config file"
    );
    assert_eq!(
        report["config"]["maxNodes"], 1,
        "flag did not win over config file"
    );
    assert_eq!(
        report["config"]["stepBound"], 300,
        "file value lost without a flag"
    );
    if let Some(tree) = report["bestTree"].as_object() {
        // Depth 1 admits at most a single predicate node.
        assert!(tree.contains_key("action") || tree["true"].get("action").is_some());
    }
}

/// `--out` routes the JSON to a file and promotes the rendered tree to
/// stdout.
#[test]
fn report_goes_to_file_with_rendered_tree_on_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let output = broccoli()
        .args([
            "--env",
            "mountaincar",
            "--step-bound",
            "300",
            "--increments",
            "0.1,0.01",
        ])
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    for key in [
        "config",
        "initialStates",
        "bestTree",
        "outcome",
        "stats",
        "perStateSteps",
        "completed",
    ] {
        assert!(!report[key].is_null(), "report file missing {key}");
    }
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(
        stdout.contains("if x"),
        "rendered tree missing from stdout: {stdout}"
    );
}

#[test]
fn bench_grid_writes_one_csv_row_per_cell_in_order() {
    let dir = tempfile::tempdir().unwrap();
    let grid_path = dir.path().join("grid.json");
    std::fs::write(
        &grid_path,
        r#"{
  "repetitions": 2,
  "cells": [
    {"env": "mountaincar", "increments": [0.1, 0.01], "maxNodes": 2, "stepBound": 300},
    {"env": "mountaincar", "increments": [0.1, 0.01], "maxNodes": 2, "stepBound": 300, "tracePruning": false}
  ]
}"#,
    )
    .unwrap();
    let out = dir.path().join("grid.csv");
    let output = broccoli()
        .arg("--bench")
        .arg(&grid_path)
        .arg("--out")
        .arg(&out)
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );

    let csv = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3, "expected header + 2 rows: {csv}");
    assert!(lines[0].starts_with("cell,env,mode,depth,maxNodes,increments"));
    let header_cols = lines[0].split(',').count();

    let row: Vec<Vec<&str>> = lines[1..]
        .iter()
        .map(|l| l.split(',').collect::<Vec<_>>())
        .collect();
    for (i, cols) in row.iter().enumerate() {
        assert_eq!(cols.len(), header_cols, "ragged row {i}");
        assert_eq!(cols[0], i.to_string(), "cells out of order");
        assert_eq!(cols[1], "mountaincar");
    }
    let col = |name: &str| lines[0].split(',').position(|c| c == name).unwrap();
    let (verdict, steps, size, timed_out) = (
        col("bestVerdict"),
        col("bestSteps"),
        col("bestTreeSize"),
        col("timedOut"),
    );
    // Pruned and exhaustive cells agree on the optimum.
    assert_eq!(row[0][verdict], "satisfied");
    assert_eq!(row[0][verdict], row[1][verdict]);
    assert_eq!(row[0][steps], row[1][steps]);
    assert_eq!(row[0][size], row[1][size]);
    assert_eq!(row[0][timed_out], "false");
    assert_eq!(row[1][timed_out], "false");
    // Two repetitions were aggregated.
    assert_eq!(row[0][col("repetitions")], "2");
}

#[test]
fn trace_export_writes_one_csv_per_initial_state() {
    let dir = tempfile::tempdir().unwrap();

    // Two initial states: the index lands before the extension.
    let base = dir.path().join("traces.csv");
    let output = broccoli()
        .args([
            "--env",
            "mountaincar",
            "--num-initial-states",
            "2",
            "--seed",
            "3",
            "--step-bound",
            "300",
            "--increments",
            "0.1,0.01",
            "--max-nodes",
            "2",
        ])
        .arg("--trace-out")
        .arg(&base)
        .output()
        .unwrap();
    assert_eq!(
        output.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    assert!(
        !base.exists(),
        "multi-state export must not write the bare path"
    );
    for i in 0..2 {
        let path = dir.path().join(format!("traces.{i}.csv"));
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("missing {}: {e}", path.display()));
        assert!(
            text.starts_with("step,s_0,s_1,action,verdict"),
            "bad header in {text}"
        );
        let last = text.trim_end().lines().last().unwrap();
        assert!(
            last.contains(",satisfied@"),
            "witness trace not satisfied: {last}"
        );
    }

    // A single state writes exactly the requested path.
    let single = dir.path().join("single.csv");
    let output = broccoli()
        .args([
            "--env",
            "mountaincar",
            "--step-bound",
            "300",
            "--increments",
            "0.1,0.01",
            "--max-nodes",
            "2",
        ])
        .arg("--trace-out")
        .arg(&single)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(Path::new(&single).exists(), "single-state export missing");
}

#[test]
fn log_env_var_enables_info_logging() {
    let output = broccoli()
        .args([
            "--env",
            "mountaincar",
            "--step-bound",
            "60",
            "--increments",
            "0.1,0.01",
        ])
        .env("BROCCOLI_LOG", "info")
        .output()
        .unwrap();
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("INFO"), "no info logs on stderr: {stderr}");

    // Default level is warn: the same run stays quiet.
    let quiet = broccoli()
        .args([
            "--env",
            "mountaincar",
            "--step-bound",
            "60",
            "--increments",
            "0.1,0.01",
        ])
        .env_remove("BROCCOLI_LOG")
        .output()
        .unwrap();
    let stderr = String::from_utf8_lossy(&quiet.stderr);
    assert!(
        !stderr.contains("INFO"),
        "info logs leaked at default level: {stderr}"
    );
}
