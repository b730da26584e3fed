//! Machine-readable run reports. A report echoes its full resolved
//! configuration, so re-running the echo reproduces the report byte for
//! byte except `stats.wallMillis`.

use serde::{Deserialize, Serialize};

use broccoli::{DecisionTree, Outcome, SearchStats, StateVector, Verdict};

use crate::config::RunConfig;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportOutcome {
    pub verdict: Verdict,
    pub steps: usize,
    pub tree_size: usize,
}

impl From<Outcome> for ReportOutcome {
    fn from(o: Outcome) -> Self {
        ReportOutcome {
            verdict: o.verdict,
            steps: o.steps,
            tree_size: o.predicate_nodes,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    /// Fully resolved configuration; feeding it back reproduces this report.
    pub config: RunConfig,
    /// The sampled initial states, in evaluation order.
    pub initial_states: Vec<Vec<f64>>,
    pub best_tree: Option<DecisionTree>,
    pub outcome: Option<ReportOutcome>,
    pub stats: SearchStats,
    /// Rollout length of the best tree from each initial state, in order.
    pub per_state_steps: Vec<usize>,
    /// False when the search was cut off before exhausting the space.
    pub completed: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// The report minus its wall-clock field, for determinism comparisons.
    #[cfg(test)]
    pub fn without_wall_millis(&self) -> RunReport {
        let mut copy = self.clone();
        copy.stats.wall_millis = 0;
        copy
    }
}

pub fn states_as_rows(states: &[StateVector]) -> Vec<Vec<f64>> {
    states.iter().map(|s| s.values().to_vec()).collect()
}
