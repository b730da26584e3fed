//! Environment and specification contracts, the built-in control benchmarks,
//! and policy rollouts.

use crate::error::{ConfigError, SearchError};
use crate::outcome::Mode;
use crate::state::{ActionId, StateBounds, StateVector};
use crate::trace::{Trace, TraceVerdict};
use crate::tree::DecisionTree;

pub mod cartpole;
pub mod mountain_car;
pub mod pendulum;
mod sampler;

pub use sampler::InitialStateSampler;

/// A deterministic black-box environment: a state space of fixed dimension,
/// a finite action set and a transition function.
///
/// Implementations must be pure: `step` on equal inputs returns bit-for-bit
/// equal outputs. `bounds` declares the box the predicate grid and the
/// initial states live in; trajectories may leave it.
pub trait Environment: Send + Sync {
    fn dim(&self) -> usize;
    fn bounds(&self) -> &StateBounds;
    fn actions(&self) -> &[ActionId];
    fn step(&self, state: &StateVector, action: ActionId) -> StateVector;

    /// Human-readable dimension names for rendered trees and traces.
    fn dim_names(&self) -> Vec<String> {
        (0..self.dim()).map(|i| format!("s{i}")).collect()
    }
}

/// Verdict of a specification on a trace prefix.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum PrefixVerdict {
    Satisfied,
    Violated,
    Undetermined,
}

/// Incremental judge for one rollout. `observe` is fed every state in order,
/// starting with the initial state, and returns the verdict of the prefix
/// seen so far. Verdicts latch: once decided, longer prefixes keep the
/// verdict (prefix closure).
pub trait SpecMonitor {
    fn reset(&mut self);
    fn observe(&mut self, state: &StateVector) -> PrefixVerdict;
}

/// A bounded-time, prefix-closed specification over traces.
///
/// Bounded time: every prefix with `step_bound()` steps is decided (never
/// `Undetermined`). Prefix closure: once a prefix is decided, every
/// extension carries the same verdict. Both are relied upon by the search.
pub trait Specification: Send + Sync {
    /// The bound k by which every trace is decided.
    fn step_bound(&self) -> usize;

    /// A fresh monitor for one rollout.
    fn monitor(&self) -> Box<dyn SpecMonitor>;

    /// Classify a prefix of visited states (`prefix[0]` is the initial
    /// state) by replaying it through a fresh monitor.
    fn classify(&self, prefix: &[StateVector]) -> PrefixVerdict {
        let mut monitor = self.monitor();
        let mut verdict = PrefixVerdict::Undetermined;
        for state in prefix {
            verdict = monitor.observe(state);
            if verdict != PrefixVerdict::Undetermined {
                break;
            }
        }
        verdict
    }
}

/// Reach-style objective: satisfied as soon as `goal` holds on a visited
/// state, violated once `bound` steps elapse without that.
pub struct ReachWithin {
    goal: fn(&StateVector) -> bool,
    bound: usize,
}

impl ReachWithin {
    pub fn new(goal: fn(&StateVector) -> bool, bound: usize) -> Self {
        ReachWithin { goal, bound }
    }
}

impl Specification for ReachWithin {
    fn step_bound(&self) -> usize {
        self.bound
    }

    fn monitor(&self) -> Box<dyn SpecMonitor> {
        Box::new(LatchingMonitor {
            fires: self.goal,
            on_fire: PrefixVerdict::Satisfied,
            at_bound: PrefixVerdict::Violated,
            bound: self.bound,
            seen: 0,
            latched: PrefixVerdict::Undetermined,
        })
    }
}

/// Safety-style objective: violated as soon as `hazard` holds on a visited
/// state, satisfied after surviving `bound` steps.
pub struct AvoidUntil {
    hazard: fn(&StateVector) -> bool,
    bound: usize,
}

impl AvoidUntil {
    pub fn new(hazard: fn(&StateVector) -> bool, bound: usize) -> Self {
        AvoidUntil { hazard, bound }
    }
}

impl Specification for AvoidUntil {
    fn step_bound(&self) -> usize {
        self.bound
    }

    fn monitor(&self) -> Box<dyn SpecMonitor> {
        Box::new(LatchingMonitor {
            fires: self.hazard,
            on_fire: PrefixVerdict::Violated,
            at_bound: PrefixVerdict::Satisfied,
            bound: self.bound,
            seen: 0,
            latched: PrefixVerdict::Undetermined,
        })
    }
}

struct LatchingMonitor {
    fires: fn(&StateVector) -> bool,
    on_fire: PrefixVerdict,
    at_bound: PrefixVerdict,
    bound: usize,
    seen: usize,
    latched: PrefixVerdict,
}

impl SpecMonitor for LatchingMonitor {
    fn reset(&mut self) {
        self.seen = 0;
        self.latched = PrefixVerdict::Undetermined;
    }

    fn observe(&mut self, state: &StateVector) -> PrefixVerdict {
        if self.latched != PrefixVerdict::Undetermined {
            return self.latched;
        }
        let steps_elapsed = self.seen;
        self.seen += 1;
        if (self.fires)(state) {
            self.latched = self.on_fire;
        } else if steps_elapsed >= self.bound {
            self.latched = self.at_bound;
        }
        self.latched
    }
}

/// Roll a decision tree out from `s0`.
///
/// Iterates `S_{i+1} = step(S_i, tree(S_i))`, feeding every state to the
/// specification monitor, and stops at the first decided verdict, after
/// `step_limit` steps, or after `early_stop_at` steps (whichever comes
/// first; a cut-off rollout is `Undetermined`). A non-finite successor
/// state aborts with an environment fault.
pub fn run_policy(
    env: &dyn Environment,
    spec: &dyn Specification,
    tree: &DecisionTree,
    s0: &StateVector,
    step_limit: usize,
    early_stop_at: Option<usize>,
) -> Result<Trace, SearchError> {
    let limit = early_stop_at.map_or(step_limit, |e| e.min(step_limit));
    let mut monitor = spec.monitor();
    let mut states = vec![s0.clone()];
    let mut actions = Vec::new();
    let mut verdict = monitor.observe(s0);
    let mut steps = 0usize;
    while verdict == PrefixVerdict::Undetermined && steps < limit {
        let current = states.last().expect("at least the initial state");
        let action = tree.evaluate(current);
        let next = env.step(current, action);
        if !next.is_finite() {
            return Err(SearchError::EnvironmentFault {
                initial: s0.clone(),
                state: next,
                steps: steps + 1,
            });
        }
        actions.push(action);
        steps += 1;
        verdict = monitor.observe(&next);
        states.push(next);
    }
    let verdict = match verdict {
        PrefixVerdict::Satisfied => TraceVerdict::Satisfied(steps),
        PrefixVerdict::Violated => TraceVerdict::Violated,
        PrefixVerdict::Undetermined => TraceVerdict::Undetermined,
    };
    Ok(Trace {
        states,
        actions,
        verdict,
    })
}

/// One of the built-in control benchmarks: environment, specification
/// factory and the default search configuration used by the CLI.
pub struct Benchmark {
    pub name: &'static str,
    pub env: Box<dyn Environment>,
    pub mode: Mode,
    /// Sampling intervals for initial states (subset of the bounds).
    pub init_intervals: Vec<(f64, f64)>,
    /// Default per-dimension predicate grid increments.
    pub default_increments: Vec<f64>,
    pub default_step_bound: usize,
    make_spec: fn(usize) -> Box<dyn Specification>,
}

impl Benchmark {
    pub fn spec(&self, step_bound: usize) -> Box<dyn Specification> {
        (self.make_spec)(step_bound)
    }

    pub fn sampler(&self, seed: u64) -> InitialStateSampler {
        InitialStateSampler::new(seed, self.init_intervals.clone())
    }
}

/// Look up a built-in benchmark: `cartpole`, `mountaincar` or `pendulum`.
pub fn by_name(name: &str) -> Result<Benchmark, ConfigError> {
    match name {
        "cartpole" => Ok(cartpole::benchmark()),
        "mountaincar" => Ok(mountain_car::benchmark()),
        "pendulum" => Ok(pendulum::benchmark()),
        other => Err(ConfigError::UnknownEnvironment(other.to_string())),
    }
}
