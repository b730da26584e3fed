//! The `run` operation: build the problem, search, report, export traces.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};

use broccoli::env::{run_policy, Benchmark};
use broccoli::{
    search_space_size, synthesise_unpruned_with, synthesise_with, BaselineOptions, NoopObserver,
    SearchOptions, SearchProblem, SearchResult,
};

use crate::config::RunConfig;
use crate::report::{states_as_rows, ReportOutcome, RunReport};

pub fn execute(config: &RunConfig) -> Result<RunReport> {
    let resolved = config.resolve()?;
    let (problem, bench) = resolved.build_problem()?;
    log::info!(
        "searching {} (mode {:?}, depth {}, max nodes {}, {} predicates, {} initial states, k = {})",
        resolved.env.as_deref().unwrap_or("?"),
        problem.mode,
        problem.depth_bound,
        problem.node_budget,
        problem.predicates.len(),
        problem.initial_states.len(),
        problem.step_bound,
    );

    let trace_pruning = resolved.trace_pruning.expect("resolved");
    let early_stop = resolved.early_stop.expect("resolved");
    let symmetry = resolved.symmetry.expect("resolved");
    let result = if trace_pruning {
        let options = SearchOptions {
            early_stop,
            symmetry,
            ..SearchOptions::default()
        };
        synthesise_with(&problem, &options, &mut NoopObserver)?
    } else {
        log::info!(
            "trace pruning disabled: exhaustive enumeration of {} trees",
            search_space_size(&problem)
        );
        let options = BaselineOptions {
            early_stop,
            symmetry,
            space_cap: resolved.oracle_cap.expect("resolved"),
            ..BaselineOptions::default()
        };
        synthesise_unpruned_with(&problem, &options, &mut NoopObserver)?
    };
    log::info!(
        "evaluated {} trees ({} rejected early, {} skipped symmetric) in {} ms",
        result.stats.trees_evaluated,
        result.stats.trees_rejected_early,
        result.stats.trees_skipped_symmetry,
        result.stats.wall_millis,
    );

    let report = build_report(resolved, &problem, &bench, result)?;
    if let Some(path) = &report.config.trace_out {
        export_traces(path, &report, &problem, &bench)?;
    }
    Ok(report)
}

fn build_report(
    resolved: RunConfig,
    problem: &SearchProblem,
    bench: &Benchmark,
    result: SearchResult,
) -> Result<RunReport> {
    let mut per_state_steps = Vec::new();
    if let Some((tree, _)) = &result.best {
        for s0 in &problem.initial_states {
            let trace = run_policy(
                bench.env.as_ref(),
                problem.spec.as_ref(),
                tree,
                s0,
                problem.step_bound,
                None,
            )?;
            per_state_steps.push(trace.steps());
        }
    }
    Ok(RunReport {
        config: resolved,
        initial_states: states_as_rows(&problem.initial_states),
        outcome: result.best.as_ref().map(|(_, o)| ReportOutcome::from(*o)),
        best_tree: result.best.map(|(t, _)| t),
        stats: result.stats,
        per_state_steps,
        completed: result.completed,
    })
}

/// Write the best tree's witness trace for every initial state. A single
/// state writes exactly the requested path; n > 1 states write
/// `base.0.csv`, `base.1.csv`, … beside it, in initial-state order.
fn export_traces(
    path: &str,
    report: &RunReport,
    problem: &SearchProblem,
    bench: &Benchmark,
) -> Result<()> {
    let Some(tree) = &report.best_tree else {
        log::warn!("no best tree; skipping trace export");
        return Ok(());
    };
    let n = problem.initial_states.len();
    for (index, s0) in problem.initial_states.iter().enumerate() {
        let trace = run_policy(
            bench.env.as_ref(),
            problem.spec.as_ref(),
            tree,
            s0,
            problem.step_bound,
            None,
        )?;
        let target = if n == 1 {
            path.to_string()
        } else {
            numbered_path(path, index)
        };
        fs::write(&target, trace.to_csv_string())
            .with_context(|| format!("writing trace to {target}"))?;
        log::info!(
            "wrote witness trace {target} ({} steps, {})",
            trace.steps(),
            trace.verdict
        );
    }
    Ok(())
}

/// Insert a state index before the extension: `tr.csv` → `tr.3.csv`;
/// extensionless paths get a plain suffix.
fn numbered_path(path: &str, index: usize) -> String {
    let p = Path::new(path);
    match (
        p.file_stem().and_then(|s| s.to_str()),
        p.extension().and_then(|e| e.to_str()),
    ) {
        (Some(stem), Some(ext)) => p
            .with_file_name(format!("{stem}.{index}.{ext}"))
            .to_string_lossy()
            .into_owned(),
        _ => format!("{path}.{index}"),
    }
}
