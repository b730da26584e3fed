//! Error types shared across the library.

use crate::state::StateVector;

/// Problems with user-supplied configuration: bounds, predicate grids,
/// search problem wiring.
#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("state bounds need at least one dimension")]
    EmptyBounds,
    #[error("dimension {dim}: invalid interval [{lo}, {hi}] (need finite lo < hi)")]
    BadInterval { dim: usize, lo: f64, hi: f64 },
    #[error("dimension {dim}: increment {increment} must be positive and finite")]
    BadIncrement { dim: usize, increment: f64 },
    #[error("dimension {dim}: threshold count must be at least 1")]
    BadCount { dim: usize },
    #[error("dimension {dim}: grid parameters for {got} dimensions, bounds have {want}")]
    DimensionMismatch { dim: usize, got: usize, want: usize },
    #[error("dimension {dim}: thresholds must be strictly increasing and inside (lo, hi]")]
    BadThresholds { dim: usize },
    #[error("dimension {dim}: grid would exceed {limit} thresholds")]
    GridTooLarge { dim: usize, limit: usize },
    #[error("every dimension ended up with an empty threshold set")]
    EmptyPredicateSpace,
    #[error("predicate dimension {dim} out of range for {space_dims}-dimensional space")]
    PredicateDimOutOfRange { dim: usize, space_dims: usize },
    #[error("predicate threshold {threshold} outside (lo, hi] = ({lo}, {hi}] for dimension {dim}")]
    PredicateThresholdOutOfRange {
        dim: usize,
        threshold: f64,
        lo: f64,
        hi: f64,
    },
    #[error("search problem needs at least one initial state")]
    NoInitialStates,
    #[error("initial state {index} = {state} lies outside the declared bounds")]
    InitialStateOutOfBounds { index: usize, state: StateVector },
    #[error("environment declares no actions")]
    NoActions,
    #[error("depth bound and node budget must be at least 1")]
    ZeroBudget,
    #[error("step bound must be at least 1")]
    ZeroStepBound,
    #[error("step bound {step_bound} exceeds the specification's bound {spec_bound}")]
    StepBoundTooLarge {
        step_bound: usize,
        spec_bound: usize,
    },
    #[error(
        "predicate space is {space_dims}-dimensional but the environment has {env_dims} dimensions"
    )]
    SpaceEnvMismatch { space_dims: usize, env_dims: usize },
    #[error("unknown environment '{0}' (known: cartpole, mountaincar, pendulum)")]
    UnknownEnvironment(String),
}

/// Errors surfaced by the synthesis entry points.
#[derive(Debug, thiserror::Error)]
pub enum SearchError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// The environment returned a non-finite state; the search aborts because
    /// no verdict about such a trajectory is meaningful.
    #[error("environment fault: non-finite state {state} after {steps} steps from {initial}")]
    EnvironmentFault {
        initial: StateVector,
        state: StateVector,
        steps: usize,
    },
    /// The exhaustive baseline refuses instances whose full enumeration,
    /// sum over shapes of |P|^n * |A|^(n+1), exceeds the configured cap.
    #[error("search space of {size} trees exceeds the exhaustive-baseline cap of {cap}")]
    SpaceCapExceeded { size: u128, cap: u128 },
}
