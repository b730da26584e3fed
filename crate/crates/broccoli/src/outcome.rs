//! Fitness of a policy on a synthesis problem, and the order used to rank it.

use serde::{Deserialize, Serialize};

/// Whether the policy met the specification.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Satisfied,
    Violated,
}

/// Optimisation direction for trace length.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    /// Reach the goal in as few steps as possible.
    #[serde(rename = "min")]
    Minimise,
    /// Stay alive for as many steps as possible.
    #[serde(rename = "max")]
    Maximise,
}

/// Fitness of one candidate tree. For multiple initial states this is the
/// worst single-state result.
///
/// `steps` is the step at which the verdict fired; violations under
/// `Minimise` record the step bound so that comparisons stay total.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub verdict: Verdict,
    pub steps: usize,
    /// Number of predicate (inner) nodes in the tree that produced this
    /// outcome; the final tie-breaker.
    pub predicate_nodes: usize,
}

/// Result of ranking two outcomes.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    ABetter,
    BBetter,
    Equal,
}

/// Total preorder on outcomes:
/// satisfied beats violated; then fewer steps win under `Minimise` and more
/// steps win under `Maximise`; remaining ties go to the smaller tree.
/// `Equal` only when verdict, steps and size all coincide.
pub fn compare_outcomes(a: &Outcome, b: &Outcome, mode: Mode) -> Comparison {
    use std::cmp::Ordering;

    let verdict_rank = |v: Verdict| match v {
        Verdict::Satisfied => 0u8,
        Verdict::Violated => 1u8,
    };
    match verdict_rank(a.verdict).cmp(&verdict_rank(b.verdict)) {
        Ordering::Less => return Comparison::ABetter,
        Ordering::Greater => return Comparison::BBetter,
        Ordering::Equal => {}
    }
    let steps_order = match mode {
        Mode::Minimise => a.steps.cmp(&b.steps),
        Mode::Maximise => b.steps.cmp(&a.steps),
    };
    match steps_order {
        Ordering::Less => return Comparison::ABetter,
        Ordering::Greater => return Comparison::BBetter,
        Ordering::Equal => {}
    }
    match a.predicate_nodes.cmp(&b.predicate_nodes) {
        Ordering::Less => Comparison::ABetter,
        Ordering::Greater => Comparison::BBetter,
        Ordering::Equal => Comparison::Equal,
    }
}
