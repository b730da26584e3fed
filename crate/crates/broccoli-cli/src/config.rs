//! Run configuration: a single flat JSON document, every field overridable
//! by the command-line flag of the same name (camelCase field ↔ kebab-case
//! flag). The resolved configuration is echoed verbatim into the report, so
//! a report is a complete, re-runnable record of its experiment.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use broccoli::env::{by_name, Benchmark};
use broccoli::{Mode, PredicateSpace, SearchProblem, StateVector};

/// Flat run configuration. Unset fields take environment-specific defaults
/// at resolution time; `skip_serializing_if` keeps echoes free of nulls.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub env: Option<String>,
    /// "min" or "max"; defaults to the benchmark's natural mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_nodes: Option<usize>,
    /// Per-dimension grid increments; mutually exclusive with `gridCount`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub increments: Option<Vec<f64>>,
    /// Evenly spaced thresholds per dimension; mutually exclusive with
    /// `increments`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub num_initial_states: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_pruning: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub early_stop: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<bool>,
    /// Enumeration-size cap for runs with trace pruning disabled.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_cap: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace_out: Option<String>,
}

impl RunConfig {
    /// Lay `over` on top of `self`: any field set in `over` wins.
    pub fn overlay(mut self, over: RunConfig) -> RunConfig {
        macro_rules! take {
            ($($field:ident),*) => {
                $(if over.$field.is_some() { self.$field = over.$field; })*
            };
        }
        take!(
            env,
            mode,
            depth,
            max_nodes,
            increments,
            grid_count,
            num_initial_states,
            seed,
            step_bound,
            trace_pruning,
            early_stop,
            symmetry,
            oracle_cap,
            out,
            trace_out
        );
        self
    }

    /// Fill every unset field with its default and validate the combination.
    /// The result echoes into reports and resolves identically when re-read.
    pub fn resolve(&self) -> Result<RunConfig> {
        let env = match &self.env {
            Some(name) => name.clone(),
            None => bail!("no environment selected; pass --env or set \"env\" in the config"),
        };
        let bench = by_name(&env)?;
        if self.increments.is_some() && self.grid_count.is_some() {
            bail!("increments and gridCount are mutually exclusive; set only one");
        }
        let depth = self.depth.unwrap_or(2);
        let resolved = RunConfig {
            env: Some(env),
            mode: Some(self.mode.unwrap_or(bench.mode)),
            depth: Some(depth),
            max_nodes: Some(self.max_nodes.unwrap_or_else(|| full_tree_nodes(depth))),
            increments: match (&self.increments, self.grid_count) {
                (Some(incs), _) => Some(incs.clone()),
                (None, Some(_)) => None,
                (None, None) => Some(bench.default_increments.clone()),
            },
            grid_count: self.grid_count,
            num_initial_states: Some(self.num_initial_states.unwrap_or(1)),
            seed: Some(self.seed.unwrap_or(0)),
            step_bound: Some(self.step_bound.unwrap_or(bench.default_step_bound)),
            trace_pruning: Some(self.trace_pruning.unwrap_or(true)),
            early_stop: Some(self.early_stop.unwrap_or(true)),
            symmetry: Some(self.symmetry.unwrap_or(true)),
            oracle_cap: Some(self.oracle_cap.unwrap_or(50_000_000)),
            out: self.out.clone(),
            trace_out: self.trace_out.clone(),
        };
        Ok(resolved)
    }

    /// Build the search problem a resolved configuration describes, plus the
    /// benchmark it came from (for dimension names and trace export).
    pub fn build_problem(&self) -> Result<(SearchProblem, Benchmark)> {
        let resolved = self.resolve()?;
        let env_name = resolved.env.as_deref().expect("resolved");
        let bench = by_name(env_name)?;
        let runner = by_name(env_name)?;
        let bounds = bench.env.bounds().clone();
        let predicates = match (&resolved.increments, resolved.grid_count) {
            (Some(incs), None) => PredicateSpace::from_increments(bounds, incs)
                .context("building the predicate grid from increments")?,
            (None, Some(count)) => PredicateSpace::from_uniform_count(bounds, count)
                .context("building the predicate grid from gridCount")?,
            _ => unreachable!("resolve() leaves exactly one grid scheme set"),
        };
        let num_states = resolved.num_initial_states.expect("resolved");
        let seed = resolved.seed.expect("resolved");
        let initial_states: Vec<StateVector> = bench.sampler(seed).sample(num_states);
        let step_bound = resolved.step_bound.expect("resolved");
        let problem = SearchProblem {
            env: bench.env,
            spec: runner.spec(step_bound),
            predicates,
            initial_states,
            depth_bound: resolved.depth.expect("resolved"),
            node_budget: resolved.max_nodes.expect("resolved"),
            mode: resolved.mode.expect("resolved"),
            step_bound,
        };
        problem
            .validate()
            .context("validating the search problem")?;
        Ok((problem, runner))
    }
}

/// Nodes of a complete binary tree of the given predicate depth.
fn full_tree_nodes(depth: usize) -> usize {
    (1usize << depth.min(20)).saturating_sub(1).max(1)
}

pub fn load_config_file(path: &str) -> Result<RunConfig> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading config file {path}"))?;
    let config: RunConfig =
        serde_json::from_str(&text).with_context(|| format!("parsing config file {path}"))?;
    Ok(config)
}
