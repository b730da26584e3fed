//! Shared helpers for the integration tests: a tiny deterministic RNG, a
//! random-small-problem generator, and an exhaustive oracle written
//! independently of the search engine (plain recursion over all trees,
//! evaluated through the public rollout API).
//!
//! Each integration test target compiles this module separately and uses a
//! different subset of it.
#![allow(dead_code)]

use broccoli::env::{by_name, run_policy};
use broccoli::{
    compare_outcomes, ActionId, Comparison, DecisionTree, Mode, Outcome, PredicateSpace,
    SearchProblem, TraceVerdict, Verdict,
};

/// SplitMix64, re-implemented for test-side use to stay independent of the
/// sampler inside the library.
pub struct TestRng(pub u64);

impl TestRng {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn in_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.unit() * (hi - lo)
    }
}

/// A randomized small synthesis problem over the real benchmark dynamics:
/// 1–4 evenly spaced thresholds per dimension, depth ≤ 2, ≤ 3 predicate
/// nodes, k ≤ 200, 1–3 initial states, alternating modes.
pub fn random_small_problem(rng: &mut TestRng, env_name: &str, mode: Mode) -> SearchProblem {
    let bench = by_name(env_name).expect("benchmark exists");
    let bounds = bench.env.bounds().clone();
    let dims = bounds.dim();
    let counts: Vec<usize> = (0..dims).map(|_| 1 + rng.below(4) as usize).collect();
    let predicates = PredicateSpace::from_counts(bounds, &counts).expect("valid counts");
    let step_bound = 40 + rng.below(161) as usize; // 40..=200
    let num_states = 1 + rng.below(3) as usize;
    let initial_states = bench.sampler(rng.next_u64()).sample(num_states);
    let depth_bound = 1 + rng.below(2) as usize;
    let node_budget = 1 + rng.below(3) as usize;
    SearchProblem {
        spec: bench.spec(step_bound),
        env: bench.env,
        predicates,
        initial_states,
        depth_bound,
        node_budget,
        mode,
        step_bound,
    }
}

/// Like [`random_small_problem`] but scaled for exhaustive cross-checking:
/// 2-dimensional benchmarks, 1–3 thresholds per dimension, ≤ 2 depth,
/// ≤ 3 predicate nodes, k ≤ 60, 1–2 initial states.
pub fn random_tiny_problem(rng: &mut TestRng, env_name: &str, mode: Mode) -> SearchProblem {
    let bench = by_name(env_name).expect("benchmark exists");
    let bounds = bench.env.bounds().clone();
    let dims = bounds.dim();
    let counts: Vec<usize> = (0..dims).map(|_| 1 + rng.below(3) as usize).collect();
    let predicates = PredicateSpace::from_counts(bounds, &counts).expect("valid counts");
    let step_bound = 30 + rng.below(31) as usize; // 30..=60
    let num_states = 1 + rng.below(2) as usize;
    let initial_states = bench.sampler(rng.next_u64()).sample(num_states);
    let depth_bound = 1 + rng.below(2) as usize;
    let node_budget = 1 + rng.below(3) as usize;
    SearchProblem {
        spec: bench.spec(step_bound),
        env: bench.env,
        predicates,
        initial_states,
        depth_bound,
        node_budget,
        mode,
        step_bound,
    }
}

/// Every decision tree of at most the given depth and predicate-node budget
/// over the cartesian predicate pool and action set.
pub fn all_trees(
    depth: usize,
    budget: usize,
    predicates: &[(usize, f64)],
    actions: &[ActionId],
) -> Vec<DecisionTree> {
    let mut out: Vec<DecisionTree> = actions.iter().map(|&a| DecisionTree::Leaf(a)).collect();
    if depth == 0 || budget == 0 {
        return out;
    }
    for &(dim, threshold) in predicates {
        for left in all_trees(depth - 1, budget - 1, predicates, actions) {
            let left_size = left.predicate_count();
            for right in all_trees(depth - 1, budget - 1 - left_size, predicates, actions) {
                out.push(DecisionTree::node(dim, threshold, left.clone(), right));
            }
        }
    }
    out
}

/// Worst-case outcome of one tree over all initial states, by running the
/// public rollout API per state and folding with the outcome comparator.
pub fn evaluate_tree(problem: &SearchProblem, tree: &DecisionTree) -> Outcome {
    let size = tree.predicate_count();
    let mut worst: Option<Outcome> = None;
    for s0 in &problem.initial_states {
        let trace = run_policy(
            problem.env.as_ref(),
            problem.spec.as_ref(),
            tree,
            s0,
            problem.step_bound,
            None,
        )
        .expect("benchmark dynamics stay finite");
        let outcome = match trace.verdict {
            TraceVerdict::Satisfied(steps) => Outcome {
                verdict: Verdict::Satisfied,
                steps,
                predicate_nodes: size,
            },
            TraceVerdict::Violated => Outcome {
                verdict: Verdict::Violated,
                steps: match problem.mode {
                    Mode::Minimise => problem.step_bound,
                    Mode::Maximise => trace.steps(),
                },
                predicate_nodes: size,
            },
            TraceVerdict::Undetermined => {
                unreachable!("specification is bounded by the step bound")
            }
        };
        worst = Some(match worst {
            None => outcome,
            Some(w) => {
                if compare_outcomes(&outcome, &w, problem.mode) == Comparison::ABetter {
                    w
                } else {
                    outcome
                }
            }
        });
    }
    worst.expect("at least one initial state")
}

/// Exhaustive best outcome: enumerate every tree, evaluate every one, keep
/// the best under the comparator. No pruning, no engine code.
pub fn oracle_best(problem: &SearchProblem) -> Outcome {
    let mut pool = Vec::new();
    for dim in 0..problem.predicates.dim() {
        for &t in problem.predicates.thresholds(dim) {
            pool.push((dim, t));
        }
    }
    let actions = problem.env.actions().to_vec();
    let mut best: Option<Outcome> = None;
    for tree in all_trees(problem.depth_bound, problem.node_budget, &pool, &actions) {
        let outcome = evaluate_tree(problem, &tree);
        best = Some(match best {
            None => outcome,
            Some(b) => {
                if compare_outcomes(&outcome, &b, problem.mode) == Comparison::ABetter {
                    outcome
                } else {
                    b
                }
            }
        });
    }
    best.expect("action leaves always exist")
}
