//! Backtracking synthesis of optimal decision-tree policies.
//!
//! [`synthesise`] enumerates trees in ascending size over the shapes allowed
//! by the depth and node budgets, evaluates each candidate on every initial
//! state, and returns the best tree under the ordering of
//! [`compare_outcomes`](crate::outcome::compare_outcomes) together with a
//! proof-of-work [`SearchStats`]. Trace-based pruning skips predicate
//! thresholds that provably reproduce already-seen traces;
//! [`synthesise_unpruned`] runs the identical enumeration without that
//! pruning as a ground-truth baseline for correctness checks and speedup
//! measurements.

mod engine;
mod shapes;

pub use engine::PredicateVariable;
pub use shapes::enumerate_shapes;

use serde::{Deserialize, Serialize};

use crate::env::{Environment, Specification};
use crate::error::{ConfigError, SearchError};
use crate::outcome::{Mode, Outcome};
use crate::predicate::PredicateSpace;
use crate::state::StateVector;
use crate::tree::DecisionTree;

use engine::{Engine, EngineConfig};

/// Everything a synthesis run needs: the system under control, the
/// objective, and the size of the space to enumerate.
pub struct SearchProblem {
    pub env: Box<dyn Environment>,
    pub spec: Box<dyn Specification>,
    pub predicates: PredicateSpace,
    pub initial_states: Vec<StateVector>,
    pub depth_bound: usize,
    pub node_budget: usize,
    pub mode: Mode,
    /// Rollout horizon; must not exceed the specification's own bound.
    pub step_bound: usize,
}

impl SearchProblem {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.depth_bound == 0 || self.node_budget == 0 {
            return Err(ConfigError::ZeroBudget);
        }
        if self.step_bound == 0 {
            return Err(ConfigError::ZeroStepBound);
        }
        if self.step_bound > self.spec.step_bound() {
            return Err(ConfigError::StepBoundTooLarge {
                step_bound: self.step_bound,
                spec_bound: self.spec.step_bound(),
            });
        }
        if self.predicates.dim() != self.env.dim() {
            return Err(ConfigError::SpaceEnvMismatch {
                space_dims: self.predicates.dim(),
                env_dims: self.env.dim(),
            });
        }
        if self.env.actions().is_empty() {
            return Err(ConfigError::NoActions);
        }
        if self.initial_states.is_empty() {
            return Err(ConfigError::NoInitialStates);
        }
        let bounds = self.env.bounds();
        for (index, state) in self.initial_states.iter().enumerate() {
            if !bounds.contains(state) {
                return Err(ConfigError::InitialStateOutOfBounds {
                    index,
                    state: state.clone(),
                });
            }
        }
        Ok(())
    }
}

/// Counters accumulated during a run; part of the machine-readable report.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchStats {
    /// Candidates fully or partially rolled out (symmetry skips excluded).
    pub trees_evaluated: u64,
    /// Candidates abandoned before all initial states finished.
    pub trees_rejected_early: u64,
    /// Candidates skipped because a predicate node had identical subtrees.
    pub trees_skipped_symmetry: u64,
    /// Total environment transitions taken.
    pub env_steps: u64,
    pub shapes_visited: u64,
    pub wall_millis: u64,
    /// True when maximisation stopped early on a step-bound-surviving tree.
    pub cap_terminated: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum SearchControl {
    Continue,
    Stop,
}

/// Hooks into a running search. `on_progress` fires every
/// `progress_every` evaluated trees and may stop the search; a stopped
/// search returns its incumbent with `completed == false`.
pub trait SearchObserver {
    fn on_progress(&mut self, _stats: &SearchStats) -> SearchControl {
        SearchControl::Continue
    }
    fn on_incumbent(&mut self, _tree: &DecisionTree, _outcome: &Outcome) {}
}

/// Observer that does nothing and never stops the search.
pub struct NoopObserver;

impl SearchObserver for NoopObserver {}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Trace-based predicate pruning (the core acceleration).
    pub trace_pruning: bool,
    /// Abandon candidates that provably cannot beat the incumbent, and stop
    /// a maximisation outright once a tree survives the full step bound.
    pub early_stop: bool,
    /// Skip trees containing a predicate node with identical subtrees.
    pub symmetry: bool,
    /// Invoke the observer every this many evaluated trees (0 = never).
    pub progress_every: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            trace_pruning: true,
            early_stop: true,
            symmetry: true,
            progress_every: 10_000,
        }
    }
}

/// Options for the unpruned baseline. Early stopping and symmetry skipping
/// default on so that a baseline comparison isolates the effect of trace
/// pruning alone; the cap aborts baselines too large to finish.
#[derive(Clone, Debug)]
pub struct BaselineOptions {
    pub early_stop: bool,
    pub symmetry: bool,
    pub progress_every: u64,
    /// Upper bound on the worst-case enumeration size
    /// (sum over shapes of |predicates|^nodes * |actions|^leaves).
    pub space_cap: u128,
}

impl Default for BaselineOptions {
    fn default() -> Self {
        BaselineOptions {
            early_stop: true,
            symmetry: true,
            progress_every: 10_000,
            space_cap: 50_000_000,
        }
    }
}

/// Outcome of a synthesis run. `best` is `None` when no tree in the space
/// achieved a satisfied verdict... and also when every tree was worse than
/// nothing under the mode; concretely it is the first incumbent ever
/// accepted, which exists iff at least one candidate completed evaluation.
/// `completed` is false only when an observer stopped the search early.
pub struct SearchResult {
    pub best: Option<(DecisionTree, Outcome)>,
    pub stats: SearchStats,
    pub completed: bool,
}

/// Worst-case number of assignments the baseline would enumerate:
/// sum over shapes of |predicates|^(predicate slots) * |actions|^(leaves).
pub fn search_space_size(problem: &SearchProblem) -> u128 {
    let shapes = enumerate_shapes(problem.depth_bound, problem.node_budget);
    let p = problem.predicates.len() as u128;
    let a = {
        let mut actions = problem.env.actions().to_vec();
        actions.sort();
        actions.dedup();
        actions.len() as u128
    };
    let mut total: u128 = 0;
    for shape in &shapes {
        let n = shape.predicate_count() as u32;
        let leaves = shape.leaf_count() as u32;
        let trees = p.saturating_pow(n).saturating_mul(a.saturating_pow(leaves));
        total = total.saturating_add(trees);
    }
    total
}

/// Run the full pruned search with default options.
pub fn synthesise(problem: &SearchProblem) -> Result<SearchResult, SearchError> {
    synthesise_with(problem, &SearchOptions::default(), &mut NoopObserver)
}

pub fn synthesise_with(
    problem: &SearchProblem,
    options: &SearchOptions,
    observer: &mut dyn SearchObserver,
) -> Result<SearchResult, SearchError> {
    problem.validate()?;
    let shapes = enumerate_shapes(problem.depth_bound, problem.node_budget);
    let engine = Engine::new(
        problem,
        EngineConfig {
            trace_pruning: options.trace_pruning,
            early_stop: options.early_stop,
            symmetry: options.symmetry,
            progress_every: options.progress_every,
        },
    );
    engine.run(&shapes, observer)
}

/// Run the exhaustive baseline: identical enumeration order and evaluation,
/// but every threshold of every dimension is tried at every predicate slot.
pub fn synthesise_unpruned(problem: &SearchProblem) -> Result<SearchResult, SearchError> {
    synthesise_unpruned_with(problem, &BaselineOptions::default(), &mut NoopObserver)
}

pub fn synthesise_unpruned_with(
    problem: &SearchProblem,
    options: &BaselineOptions,
    observer: &mut dyn SearchObserver,
) -> Result<SearchResult, SearchError> {
    problem.validate()?;
    let size = search_space_size(problem);
    if size > options.space_cap {
        return Err(SearchError::SpaceCapExceeded {
            size,
            cap: options.space_cap,
        });
    }
    let shapes = enumerate_shapes(problem.depth_bound, problem.node_budget);
    let engine = Engine::new(
        problem,
        EngineConfig {
            trace_pruning: false,
            early_stop: options.early_stop,
            symmetry: options.symmetry,
            progress_every: options.progress_every,
        },
    );
    engine.run(&shapes, observer)
}
