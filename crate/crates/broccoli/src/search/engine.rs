//! The backtracking core: tree slots, predicate cursors with distance-based
//! pruning, candidate evaluation with early stopping, symmetry skipping.

use crate::env::{PrefixVerdict, SpecMonitor};
use crate::error::SearchError;
use crate::outcome::{compare_outcomes, Comparison, Mode, Outcome, Verdict};
use crate::predicate::{Predicate, PredicateSpace};
use crate::state::{ActionId, StateVector};
use crate::tree::{DecisionTree, TreeShape};

use super::{SearchControl, SearchObserver, SearchProblem, SearchResult, SearchStats};

/// Distances use +infinity as "no true evaluation observed": it behaves
/// identically to an undefined value in the running-minimum fold.
const UNDEFINED: f64 = f64::INFINITY;

/// Enumeration cursor of one predicate slot, together with its distance
/// value: the minimum value of the predicated dimension over all visits
/// where the predicate evaluated to true since the current assignment.
#[derive(Clone, Debug)]
pub struct PredicateVariable {
    current: Option<(usize, usize)>, // (dimension, index into its thresholds)
    distance: f64,
}

impl PredicateVariable {
    pub fn fresh() -> Self {
        PredicateVariable {
            current: None,
            distance: UNDEFINED,
        }
    }

    pub fn reset(&mut self) {
        self.current = None;
        self.distance = UNDEFINED;
    }

    pub fn current(&self, space: &PredicateSpace) -> Option<Predicate> {
        self.current.map(|(dim, idx)| Predicate {
            dim,
            threshold: space.thresholds(dim)[idx],
        })
    }

    /// `None` when the predicate never held since the current assignment.
    pub fn distance(&self) -> Option<f64> {
        if self.distance == UNDEFINED {
            None
        } else {
            Some(self.distance)
        }
    }

    /// Fold an observed value of the predicated dimension (from a visit
    /// where the predicate held) into the distance.
    pub fn record_distance(&mut self, value: f64) {
        if value < self.distance {
            self.distance = value;
        }
    }

    /// Move to the next predicate to try, resetting the distance.
    ///
    /// Unpruned, this walks thresholds within the dimension and then moves
    /// to the next dimension. With pruning, the next threshold must be
    /// strictly greater than the recorded distance (any smaller one would
    /// replay the traces just explored), and a slot whose predicate never
    /// held abandons its entire dimension.
    pub fn advance(&mut self, space: &PredicateSpace, pruning: bool) -> Option<Predicate> {
        let next = match self.current {
            None => first_available(space, 0, 0),
            Some((dim, idx)) => {
                if !pruning {
                    first_available(space, dim, idx + 1)
                } else if self.distance == UNDEFINED {
                    first_available(space, dim + 1, 0)
                } else {
                    let ts = space.thresholds(dim);
                    // distance >= current threshold, so this lands past idx;
                    // the max() only guards a hypothetical out-of-band merge
                    let j = ts.partition_point(|&t| t <= self.distance).max(idx + 1);
                    if j < ts.len() {
                        Some((dim, j))
                    } else {
                        first_available(space, dim + 1, 0)
                    }
                }
            }
        };
        self.current = next;
        self.distance = UNDEFINED;
        next.map(|(dim, idx)| Predicate {
            dim,
            threshold: space.thresholds(dim)[idx],
        })
    }
}

/// First (dimension, index) at or after the given position with a threshold
/// available; empty dimensions are skipped.
fn first_available(
    space: &PredicateSpace,
    mut dim: usize,
    mut idx: usize,
) -> Option<(usize, usize)> {
    while dim < space.dim() {
        if idx < space.thresholds(dim).len() {
            return Some((dim, idx));
        }
        dim += 1;
        idx = 0;
    }
    None
}

#[derive(Copy, Clone, Debug)]
enum SlotKind {
    Action,
    /// Pre-order indices of the subtree roots.
    Predicate {
        if_true: usize,
        if_false: usize,
    },
}

/// One backtracking variable plus the resolved assignment for fast rollouts.
struct Slot {
    kind: SlotKind,
    pred: PredicateVariable,
    action_cursor: Option<usize>,
    dim: usize,
    threshold: f64,
    action: ActionId,
}

pub(super) struct EngineConfig {
    pub trace_pruning: bool,
    pub early_stop: bool,
    pub symmetry: bool,
    pub progress_every: u64,
}

pub(super) struct Engine<'a> {
    problem: &'a SearchProblem,
    cfg: EngineConfig,
    actions: Vec<ActionId>,
    monitor: Box<dyn SpecMonitor>,
    slots: Vec<Slot>,
    shape_size: usize,
    rollout_dist: Vec<f64>,
    candidate_dist: Vec<f64>,
    incumbent: Option<(DecisionTree, Outcome)>,
    stats: SearchStats,
    stopped: bool,
}

impl<'a> Engine<'a> {
    pub fn new(problem: &'a SearchProblem, cfg: EngineConfig) -> Self {
        let mut actions = problem.env.actions().to_vec();
        actions.sort();
        actions.dedup();
        let monitor = problem.spec.monitor();
        Engine {
            problem,
            cfg,
            actions,
            monitor,
            slots: Vec::new(),
            shape_size: 0,
            rollout_dist: Vec::new(),
            candidate_dist: Vec::new(),
            incumbent: None,
            stats: SearchStats::default(),
            stopped: false,
        }
    }

    pub fn run(
        mut self,
        shapes: &[TreeShape],
        observer: &mut dyn SearchObserver,
    ) -> Result<SearchResult, SearchError> {
        let started = std::time::Instant::now();
        for shape in shapes {
            self.stats.shapes_visited += 1;
            self.load_shape(shape);
            self.explore_shape(observer, &started)?;
            if self.stopped || self.stats.cap_terminated {
                break;
            }
        }
        self.stats.wall_millis = started.elapsed().as_millis() as u64;
        Ok(SearchResult {
            best: self.incumbent,
            stats: self.stats,
            completed: !self.stopped,
        })
    }

    fn load_shape(&mut self, shape: &TreeShape) {
        fn flatten(shape: &TreeShape, out: &mut Vec<SlotKind>) -> usize {
            let own = out.len();
            match shape {
                TreeShape::Leaf => out.push(SlotKind::Action),
                TreeShape::Branch(l, r) => {
                    out.push(SlotKind::Action); // placeholder, patched below
                    let if_true = flatten(l, out);
                    let if_false = flatten(r, out);
                    out[own] = SlotKind::Predicate { if_true, if_false };
                }
            }
            own
        }
        let mut kinds = Vec::new();
        flatten(shape, &mut kinds);
        self.slots = kinds
            .into_iter()
            .map(|kind| Slot {
                kind,
                pred: PredicateVariable::fresh(),
                action_cursor: None,
                dim: 0,
                threshold: 0.0,
                action: ActionId(0),
            })
            .collect();
        self.shape_size = shape.predicate_count();
        self.rollout_dist = vec![UNDEFINED; self.slots.len()];
        self.candidate_dist = vec![UNDEFINED; self.slots.len()];
    }

    /// Depth-first backtracking over the slots of the loaded shape, in
    /// pre-order; deeper variables cycle through all their values before an
    /// earlier variable moves.
    fn explore_shape(
        &mut self,
        observer: &mut dyn SearchObserver,
        started: &std::time::Instant,
    ) -> Result<(), SearchError> {
        let n = self.slots.len();
        let mut level = 0usize;
        loop {
            if self.advance_slot(level) {
                level += 1;
                if level == n {
                    self.consider_candidate(observer, started)?;
                    if self.stopped || self.stats.cap_terminated {
                        return Ok(());
                    }
                    level = n - 1;
                }
            } else {
                self.reset_slot(level);
                if level == 0 {
                    return Ok(());
                }
                level -= 1;
            }
        }
    }

    fn advance_slot(&mut self, level: usize) -> bool {
        match self.slots[level].kind {
            SlotKind::Action => {
                let next = match self.slots[level].action_cursor {
                    None => 0,
                    Some(c) => c + 1,
                };
                if next < self.actions.len() {
                    self.slots[level].action_cursor = Some(next);
                    self.slots[level].action = self.actions[next];
                    true
                } else {
                    false
                }
            }
            SlotKind::Predicate { .. } => {
                let slot = &mut self.slots[level];
                match slot
                    .pred
                    .advance(&self.problem.predicates, self.cfg.trace_pruning)
                {
                    Some(p) => {
                        slot.dim = p.dim;
                        slot.threshold = p.threshold;
                        true
                    }
                    None => false,
                }
            }
        }
    }

    fn reset_slot(&mut self, level: usize) {
        let slot = &mut self.slots[level];
        slot.pred.reset();
        slot.action_cursor = None;
    }

    fn consider_candidate(
        &mut self,
        observer: &mut dyn SearchObserver,
        started: &std::time::Instant,
    ) -> Result<(), SearchError> {
        if self.cfg.symmetry && self.has_symmetric_node() {
            self.stats.trees_skipped_symmetry += 1;
            return Ok(());
        }
        self.stats.trees_evaluated += 1;
        match self.evaluate_candidate()? {
            Some((verdict, steps)) => {
                let outcome = Outcome {
                    verdict,
                    steps,
                    predicate_nodes: self.shape_size,
                };
                let improves = match &self.incumbent {
                    None => true,
                    Some((_, inc)) => {
                        compare_outcomes(&outcome, inc, self.problem.mode) == Comparison::ABetter
                    }
                };
                if improves {
                    let tree = self.materialize();
                    observer.on_incumbent(&tree, &outcome);
                    self.incumbent = Some((tree, outcome));
                    // a maximisation incumbent that survives to the step cap
                    // cannot be beaten; later trees could at best tie
                    if self.cfg.early_stop
                        && self.problem.mode == Mode::Maximise
                        && outcome.verdict == Verdict::Satisfied
                        && outcome.steps >= self.problem.step_bound
                    {
                        self.stats.cap_terminated = true;
                    }
                }
            }
            None => self.stats.trees_rejected_early += 1,
        }
        if self.cfg.progress_every > 0
            && self
                .stats
                .trees_evaluated
                .is_multiple_of(self.cfg.progress_every)
        {
            self.stats.wall_millis = started.elapsed().as_millis() as u64;
            if observer.on_progress(&self.stats) == SearchControl::Stop {
                self.stopped = true;
            }
        }
        Ok(())
    }

    /// Evaluate the current assignment on every initial state, in order.
    /// Returns the worst single-state fitness, or `None` when the candidate
    /// was rejected before finishing. On rejection only the distances of the
    /// trace just rolled out are merged; a completed evaluation merges the
    /// distances of all its rollouts.
    fn evaluate_candidate(&mut self) -> Result<Option<(Verdict, usize)>, SearchError> {
        for d in &mut self.candidate_dist {
            *d = UNDEFINED;
        }
        let cutoff = self.rollout_cutoff();
        let mut worst: Option<(Verdict, usize)> = None;
        for index in 0..self.problem.initial_states.len() {
            for d in &mut self.rollout_dist {
                *d = UNDEFINED;
            }
            let (verdict, steps) = self.rollout(index, cutoff)?;
            let fitness = match verdict {
                PrefixVerdict::Satisfied => (Verdict::Satisfied, steps),
                PrefixVerdict::Violated => {
                    let steps = match self.problem.mode {
                        Mode::Minimise => self.problem.step_bound,
                        Mode::Maximise => steps,
                    };
                    (Verdict::Violated, steps)
                }
                PrefixVerdict::Undetermined => {
                    // rollout cut off before a verdict: reject
                    self.merge_last_trace_only();
                    return Ok(None);
                }
            };
            worst = Some(match worst {
                None => fitness,
                Some(w) => worse_fitness(w, fitness, self.problem.mode),
            });
            if self.cfg.early_stop && !self.still_viable(worst.expect("set above")) {
                self.merge_last_trace_only();
                return Ok(None);
            }
            for (c, r) in self.candidate_dist.iter_mut().zip(&self.rollout_dist) {
                if *r < *c {
                    *c = *r;
                }
            }
        }
        self.merge_candidate_distances();
        Ok(worst)
    }

    /// Steps allowed per rollout. Minimising against a satisfied incumbent
    /// with b steps, a candidate not at the goal after b - 1 steps cannot
    /// win, so the rollout is cut there; every other situation runs to the
    /// step bound.
    fn rollout_cutoff(&self) -> usize {
        let k = self.problem.step_bound;
        if !self.cfg.early_stop {
            return k;
        }
        match (&self.problem.mode, &self.incumbent) {
            (Mode::Minimise, Some((_, inc))) if inc.verdict == Verdict::Satisfied => {
                inc.steps.saturating_sub(1).min(k)
            }
            _ => k,
        }
    }

    /// Could a candidate whose worst fitness so far is `worst` still replace
    /// the incumbent? Fitness only degrades as more initial states run, so
    /// once this is false the candidate is dead. (Maximising, a rollout that
    /// violates at or below the incumbent's steps dies here.)
    fn still_viable(&self, worst: (Verdict, usize)) -> bool {
        match &self.incumbent {
            None => true,
            Some((_, inc)) => {
                let candidate = Outcome {
                    verdict: worst.0,
                    steps: worst.1,
                    predicate_nodes: self.shape_size,
                };
                compare_outcomes(&candidate, inc, self.problem.mode) == Comparison::ABetter
            }
        }
    }

    fn rollout(
        &mut self,
        state_index: usize,
        cutoff: usize,
    ) -> Result<(PrefixVerdict, usize), SearchError> {
        self.monitor.reset();
        let mut state = self.problem.initial_states[state_index].clone();
        let mut verdict = self.monitor.observe(&state);
        let mut steps = 0usize;
        while verdict == PrefixVerdict::Undetermined && steps < cutoff {
            let action = self.choose_action(&state);
            let next = self.problem.env.step(&state, action);
            self.stats.env_steps += 1;
            if !next.is_finite() {
                return Err(SearchError::EnvironmentFault {
                    initial: self.problem.initial_states[state_index].clone(),
                    state: next,
                    steps: steps + 1,
                });
            }
            steps += 1;
            verdict = self.monitor.observe(&next);
            state = next;
        }
        Ok((verdict, steps))
    }

    /// Walk the assigned tree on `state`, recording distance updates for
    /// every predicate slot that evaluates to true.
    fn choose_action(&mut self, state: &StateVector) -> ActionId {
        let mut i = 0usize;
        loop {
            match self.slots[i].kind {
                SlotKind::Action => return self.slots[i].action,
                SlotKind::Predicate { if_true, if_false } => {
                    let value = state[self.slots[i].dim];
                    if value >= self.slots[i].threshold {
                        if value < self.rollout_dist[i] {
                            self.rollout_dist[i] = value;
                        }
                        i = if_true;
                    } else {
                        i = if_false;
                    }
                }
            }
        }
    }

    fn merge_last_trace_only(&mut self) {
        for (slot, &d) in self.slots.iter_mut().zip(&self.rollout_dist) {
            if d != UNDEFINED {
                slot.pred.record_distance(d);
            }
        }
    }

    fn merge_candidate_distances(&mut self) {
        for (slot, &d) in self.slots.iter_mut().zip(&self.candidate_dist) {
            if d != UNDEFINED {
                slot.pred.record_distance(d);
            }
        }
    }

    fn has_symmetric_node(&self) -> bool {
        (0..self.slots.len()).any(|i| match self.slots[i].kind {
            SlotKind::Predicate { if_true, if_false } => self.subtrees_equal(if_true, if_false),
            SlotKind::Action => false,
        })
    }

    fn subtrees_equal(&self, a: usize, b: usize) -> bool {
        match (self.slots[a].kind, self.slots[b].kind) {
            (SlotKind::Action, SlotKind::Action) => self.slots[a].action == self.slots[b].action,
            (
                SlotKind::Predicate {
                    if_true: t1,
                    if_false: f1,
                },
                SlotKind::Predicate {
                    if_true: t2,
                    if_false: f2,
                },
            ) => {
                self.slots[a].dim == self.slots[b].dim
                    && self.slots[a].threshold == self.slots[b].threshold
                    && self.subtrees_equal(t1, t2)
                    && self.subtrees_equal(f1, f2)
            }
            _ => false,
        }
    }

    fn materialize(&self) -> DecisionTree {
        fn build(slots: &[Slot], i: usize) -> DecisionTree {
            match slots[i].kind {
                SlotKind::Action => DecisionTree::Leaf(slots[i].action),
                SlotKind::Predicate { if_true, if_false } => DecisionTree::Node {
                    predicate: Predicate {
                        dim: slots[i].dim,
                        threshold: slots[i].threshold,
                    },
                    if_true: Box::new(build(slots, if_true)),
                    if_false: Box::new(build(slots, if_false)),
                },
            }
        }
        build(&self.slots, 0)
    }
}

/// The worse of two single-state fitness values (the multi-state fitness of
/// a tree is its worst single-state outcome).
fn worse_fitness(a: (Verdict, usize), b: (Verdict, usize), mode: Mode) -> (Verdict, usize) {
    let ao = Outcome {
        verdict: a.0,
        steps: a.1,
        predicate_nodes: 0,
    };
    let bo = Outcome {
        verdict: b.0,
        steps: b.1,
        predicate_nodes: 0,
    };
    match compare_outcomes(&ao, &bo, mode) {
        Comparison::ABetter => b,
        _ => a,
    }
}
