//! Provably optimal decision-tree policies for deterministic black-box
//! environments.
//!
//! Given an environment (a deterministic transition function over a
//! real-valued state space with a finite action set), a bounded-time
//! specification, a finite pool of threshold predicates and a set of initial
//! states, [`synthesise`] finds a decision-tree policy that is *optimal*
//! within the searched space: no tree over the same predicate pool, action
//! set and size budget achieves a better worst-case outcome. Optimality is
//! exhaustive, not statistical — the search enumerates the whole space,
//! skipping only candidates it can prove redundant.
//!
//! The enumeration visits tree shapes in ascending size, so the returned
//! tree is also minimal: smaller trees are exhausted before larger ones, and
//! ties prefer the incumbent found in the smaller shape. Three accelerations
//! keep that affordable:
//!
//! * **Trace-based pruning** — after evaluating a candidate, each predicate
//!   records the minimum value at which it held; any threshold not exceeding
//!   that minimum would replay the same traces, so the enumeration jumps
//!   straight past the whole band (and abandons a dimension entirely when
//!   the predicate never held).
//! * **Early stopping** — rollouts are cut as soon as a candidate provably
//!   cannot beat the incumbent, and a maximisation run terminates outright
//!   once a tree survives the full step bound.
//! * **Symmetry skipping** — trees where some predicate node has identical
//!   subtrees are skipped; the predicate would be dead weight.
//!
//! [`synthesise_unpruned`] runs the identical enumeration with trace-based
//! pruning disabled, as a ground-truth baseline.
//!
//! # Example
//!
//! Find the fastest tree that drives the mountain car to the goal:
//!
//! ```
//! use broccoli::env;
//! use broccoli::{PredicateSpace, SearchProblem, StateVector, synthesise};
//!
//! let bench = env::by_name("mountaincar").unwrap();
//! let bounds = bench.env.bounds().clone();
//! let spec = bench.spec(200);
//! let problem = SearchProblem {
//!     env: bench.env,
//!     spec,
//!     predicates: PredicateSpace::from_increments(bounds, &[0.3, 0.02]).unwrap(),
//!     initial_states: vec![StateVector::from([-0.5, 0.0])],
//!     depth_bound: 1,
//!     node_budget: 1,
//!     mode: bench.mode,
//!     step_bound: 200,
//! };
//! let result = synthesise(&problem).unwrap();
//! assert!(result.completed);
//! ```

pub mod env;
pub mod error;
pub mod outcome;
pub mod predicate;
pub mod search;
pub mod state;
pub mod trace;
pub mod tree;

pub use error::{ConfigError, SearchError};
pub use outcome::{compare_outcomes, Comparison, Mode, Outcome, Verdict};
pub use predicate::{Predicate, PredicateSpace};
pub use search::{
    enumerate_shapes, search_space_size, synthesise, synthesise_unpruned, synthesise_unpruned_with,
    synthesise_with, BaselineOptions, NoopObserver, SearchControl, SearchObserver, SearchOptions,
    SearchProblem, SearchResult, SearchStats,
};
pub use state::{ActionId, StateBounds, StateVector};
pub use trace::{Trace, TraceVerdict};
pub use tree::{DecisionTree, TreeShape};
