//! `broccoli` — synthesize provably optimal decision-tree control policies.
//!
//! Two operations share one binary: a synthesis run (default) configured by
//! flags and/or a flat JSON config file, and a benchmark harness
//! (`--bench grid.json`) that times a grid of configurations and emits CSV.
//!
//! Exit codes: 0 = a satisfying policy was found (or bench completed),
//! 2 = search completed without a satisfying policy, 1 = any error.

mod bench;
mod config;
mod report;
mod run;

use anyhow::{bail, Result};
use clap::Parser;

use broccoli::Mode;

use config::RunConfig;

const EXIT_NO_SOLUTION: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "broccoli",
    version,
    about = "Provably optimal decision-tree policies for deterministic control environments",
    after_help = "Every config-file field (camelCase) maps to the flag of the same name \
                  (kebab-case); flags win. BROCCOLI_LOG=info enables progress logging."
)]
struct Cli {
    /// Flat JSON config file; flags override individual fields
    #[arg(long, value_name = "FILE")]
    config: Option<String>,

    /// Run a benchmark grid (JSON) and emit CSV instead of a single search
    #[arg(long, value_name = "GRID_JSON")]
    bench: Option<String>,

    /// Environment: cartpole | mountaincar | pendulum
    #[arg(long)]
    env: Option<String>,

    /// Objective: min (reach fast) | max (survive long)
    #[arg(long)]
    mode: Option<String>,

    /// Maximum predicate depth of candidate trees
    #[arg(long)]
    depth: Option<usize>,

    /// Maximum number of predicate nodes
    #[arg(long)]
    max_nodes: Option<usize>,

    /// Per-dimension grid increments, comma-separated (e.g. 0.05,0.005)
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    increments: Option<Vec<f64>>,

    /// Evenly spaced thresholds per dimension (alternative to --increments)
    #[arg(long)]
    grid_count: Option<usize>,

    /// How many initial states to sample
    #[arg(long)]
    num_initial_states: Option<usize>,

    /// PRNG seed for initial-state sampling
    #[arg(long)]
    seed: Option<u64>,

    /// Rollout horizon k
    #[arg(long)]
    step_bound: Option<usize>,

    /// Disable trace-based pruning (exhaustive enumeration, cap-guarded)
    #[arg(long)]
    no_trace_pruning: bool,

    /// Disable incumbent-based early stopping
    #[arg(long)]
    no_early_stop: bool,

    /// Disable skipping of trees with symmetric predicate nodes
    #[arg(long)]
    no_symmetry: bool,

    /// Tree-count cap for runs with trace pruning disabled
    #[arg(long)]
    oracle_cap: Option<u128>,

    /// Write the report JSON (or bench CSV) here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<String>,

    /// Export the best tree's witness trace(s) as CSV
    #[arg(long, value_name = "FILE")]
    trace_out: Option<String>,
}

impl Cli {
    fn as_overrides(&self) -> Result<RunConfig> {
        let mode = match self.mode.as_deref() {
            None => None,
            Some("min") => Some(Mode::Minimise),
            Some("max") => Some(Mode::Maximise),
            Some(other) => bail!("--mode must be 'min' or 'max', got '{other}'"),
        };
        Ok(RunConfig {
            env: self.env.clone(),
            mode,
            depth: self.depth,
            max_nodes: self.max_nodes,
            increments: self.increments.clone(),
            grid_count: self.grid_count,
            num_initial_states: self.num_initial_states,
            seed: self.seed,
            step_bound: self.step_bound,
            trace_pruning: self.no_trace_pruning.then_some(false),
            early_stop: self.no_early_stop.then_some(false),
            symmetry: self.no_symmetry.then_some(false),
            oracle_cap: self.oracle_cap,
            out: self.out.clone(),
            trace_out: self.trace_out.clone(),
        })
    }
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("BROCCOLI_LOG", "warn")).init();
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    if let Some(grid_path) = &cli.bench {
        let grid = bench::load_grid_file(grid_path)?;
        let csv = bench::execute(&grid)?;
        match &cli.out {
            Some(path) => std::fs::write(path, &csv)?,
            None => print!("{csv}"),
        }
        return Ok(0);
    }

    let mut config = match &cli.config {
        Some(path) => config::load_config_file(path)?,
        None => RunConfig::default(),
    };
    config = config.overlay(cli.as_overrides()?);

    let report = run::execute(&config)?;
    let json = report.to_json();

    let rendered = report.best_tree.as_ref().map(|tree| {
        let bench = broccoli::env::by_name(report.config.env.as_deref().unwrap_or(""))
            .expect("config resolved against this environment");
        let names = bench.env.dim_names();
        tree.render(&names)
    });

    match &report.config.out {
        Some(path) => {
            std::fs::write(path, &json)?;
            log::info!("wrote report to {path}");
            if let Some(text) = rendered {
                println!("{text}");
            }
        }
        None => {
            print!("{json}");
            // keep stdout machine-readable; the human view goes to stderr
            if let Some(text) = rendered {
                eprintln!("{text}");
            }
        }
    }

    let solved = report
        .outcome
        .as_ref()
        .is_some_and(|o| o.verdict == broccoli::Verdict::Satisfied);
    Ok(if solved { 0 } else { EXIT_NO_SOLUTION })
}
