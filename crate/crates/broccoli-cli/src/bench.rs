//! The `bench` operation: run a grid of configurations sequentially,
//! repeat each cell, and emit one CSV row per cell in input order.

use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use broccoli::{
    search_space_size, synthesise_unpruned_with, synthesise_with, BaselineOptions, Outcome,
    SearchControl, SearchObserver, SearchOptions, SearchStats,
};

use crate::config::RunConfig;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BenchGrid {
    /// Runs per cell; means and standard deviations are over these.
    #[serde(default = "one")]
    pub repetitions: usize,
    /// Per-repetition wall-clock budget; a budgeted-out repetition marks the
    /// whole cell timed-out but never aborts the grid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time_budget_secs: Option<f64>,
    pub cells: Vec<RunConfig>,
}

fn one() -> usize {
    1
}

struct TimeBudget {
    started: Instant,
    budget: Duration,
}

impl SearchObserver for TimeBudget {
    fn on_progress(&mut self, _stats: &SearchStats) -> SearchControl {
        if self.started.elapsed() >= self.budget {
            SearchControl::Stop
        } else {
            SearchControl::Continue
        }
    }
}

struct CellMeasurement {
    stats: SearchStats,
    best: Option<Outcome>,
    completed: bool,
}

fn run_cell_once(cell: &RunConfig, budget: Option<f64>) -> Result<CellMeasurement> {
    let resolved = cell.resolve()?;
    let (problem, _) = resolved.build_problem()?;
    let progress_every = 1_000;
    let mut stopwatch = TimeBudget {
        started: Instant::now(),
        budget: budget.map_or(Duration::MAX, Duration::from_secs_f64),
    };
    let result = if resolved.trace_pruning.expect("resolved") {
        let options = SearchOptions {
            early_stop: resolved.early_stop.expect("resolved"),
            symmetry: resolved.symmetry.expect("resolved"),
            progress_every,
            ..SearchOptions::default()
        };
        synthesise_with(&problem, &options, &mut stopwatch)?
    } else {
        let options = BaselineOptions {
            early_stop: resolved.early_stop.expect("resolved"),
            symmetry: resolved.symmetry.expect("resolved"),
            progress_every,
            space_cap: resolved.oracle_cap.expect("resolved"),
        };
        synthesise_unpruned_with(&problem, &options, &mut stopwatch)?
    };
    Ok(CellMeasurement {
        stats: result.stats.clone(),
        best: result.best.map(|(_, o)| o),
        completed: result.completed,
    })
}

pub fn execute(grid: &BenchGrid) -> Result<String> {
    if grid.cells.is_empty() {
        bail!("bench grid has no cells");
    }
    if grid.repetitions == 0 {
        bail!("repetitions must be at least 1");
    }
    // Validate every cell up front so a bad config or an oversized
    // exhaustive cell fails before any timing work starts.
    for (index, cell) in grid.cells.iter().enumerate() {
        let resolved = cell
            .resolve()
            .with_context(|| format!("cell {index}: invalid configuration"))?;
        let (problem, _) = resolved
            .build_problem()
            .with_context(|| format!("cell {index}: invalid configuration"))?;
        if !resolved.trace_pruning.expect("resolved") {
            let size = search_space_size(&problem);
            let cap = resolved.oracle_cap.expect("resolved");
            if size > cap {
                bail!(
                    "cell {index}: exhaustive enumeration of {size} trees exceeds the \
                     oracle cap of {cap}"
                );
            }
        }
    }

    let mut csv = String::from(
        "cell,env,mode,depth,maxNodes,increments,gridCount,numInitialStates,seed,stepBound,\
         tracePruning,earlyStop,symmetry,repetitions,meanWallMillis,stddevWallMillis,\
         meanTreesEvaluated,bestVerdict,bestSteps,bestTreeSize,timedOut\n",
    );
    for (index, cell) in grid.cells.iter().enumerate() {
        let resolved = cell.resolve()?;
        let mut walls = Vec::with_capacity(grid.repetitions);
        let mut trees = Vec::with_capacity(grid.repetitions);
        let mut best: Option<Outcome> = None;
        let mut timed_out = false;
        for _ in 0..grid.repetitions {
            let m = run_cell_once(cell, grid.time_budget_secs)?;
            walls.push(m.stats.wall_millis as f64);
            trees.push(m.stats.trees_evaluated as f64);
            if best.is_none() {
                best = m.best;
            }
            timed_out |= !m.completed;
        }
        log::info!(
            "cell {index} ({}): mean {} ms over {} reps{}",
            resolved.env.as_deref().unwrap_or("?"),
            mean(&walls).round(),
            grid.repetitions,
            if timed_out { ", timed out" } else { "" }
        );
        let (verdict, steps, size) = match best {
            Some(o) => (
                serde_json::to_value(o.verdict)
                    .expect("verdict serializes")
                    .as_str()
                    .expect("verdict is a string")
                    .to_string(),
                o.steps.to_string(),
                o.predicate_nodes.to_string(),
            ),
            None => (String::new(), String::new(), String::new()),
        };
        let row = [
            index.to_string(),
            resolved.env.clone().unwrap_or_default(),
            match resolved.mode.expect("resolved") {
                broccoli::Mode::Minimise => "min".to_string(),
                broccoli::Mode::Maximise => "max".to_string(),
            },
            resolved.depth.expect("resolved").to_string(),
            resolved.max_nodes.expect("resolved").to_string(),
            resolved
                .increments
                .as_ref()
                .map(|incs| {
                    incs.iter()
                        .map(f64::to_string)
                        .collect::<Vec<_>>()
                        .join(";")
                })
                .unwrap_or_default(),
            resolved
                .grid_count
                .map(|c| c.to_string())
                .unwrap_or_default(),
            resolved.num_initial_states.expect("resolved").to_string(),
            resolved.seed.expect("resolved").to_string(),
            resolved.step_bound.expect("resolved").to_string(),
            resolved.trace_pruning.expect("resolved").to_string(),
            resolved.early_stop.expect("resolved").to_string(),
            resolved.symmetry.expect("resolved").to_string(),
            grid.repetitions.to_string(),
            format_float(mean(&walls)),
            format_float(stddev(&walls)),
            format_float(mean(&trees)),
            verdict,
            steps,
            size,
            timed_out.to_string(),
        ];
        csv.push_str(&row.join(","));
        csv.push('\n');
    }
    Ok(csv)
}

pub fn load_grid_file(path: &str) -> Result<BenchGrid> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading bench grid {path}"))?;
    let grid: BenchGrid =
        serde_json::from_str(&text).with_context(|| format!("parsing bench grid {path}"))?;
    Ok(grid)
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Population standard deviation; exactly 0 for a single repetition.
fn stddev(xs: &[f64]) -> f64 {
    let m = mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / xs.len() as f64).sqrt()
}

fn format_float(x: f64) -> String {
    format!("{x}")
}
