//! Mountain car: an underpowered car must climb out of a valley by rocking,
//! reaching the flag on the right rim in as few steps as possible.
//!
//! State `(x, x_dot)`. The engine force alone cannot beat gravity, so the
//! car has to build momentum across the valley.

use super::{Benchmark, Environment, ReachWithin, Specification};
use crate::outcome::Mode;
use crate::state::{ActionId, StateBounds, StateVector};

const FORCE: f64 = 0.001;
const GRAVITY: f64 = 0.0025;
pub const MIN_POSITION: f64 = -1.2;
pub const MAX_POSITION: f64 = 0.6;
pub const MAX_SPEED: f64 = 0.07;
pub const GOAL_POSITION: f64 = 0.5;

const ACTIONS: [ActionId; 2] = [ActionId(-1), ActionId(1)];

pub struct MountainCar {
    bounds: StateBounds,
}

impl MountainCar {
    pub fn new() -> Self {
        let bounds = StateBounds::new(vec![(MIN_POSITION, MAX_POSITION), (-MAX_SPEED, MAX_SPEED)])
            .expect("static bounds are valid");
        MountainCar { bounds }
    }
}

impl Default for MountainCar {
    fn default() -> Self {
        Self::new()
    }
}

impl Environment for MountainCar {
    fn dim(&self) -> usize {
        2
    }

    fn bounds(&self) -> &StateBounds {
        &self.bounds
    }

    fn actions(&self) -> &[ActionId] {
        &ACTIONS
    }

    fn step(&self, state: &StateVector, action: ActionId) -> StateVector {
        let (x, v) = (state[0], state[1]);
        let mut v = v + action.0 as f64 * FORCE + (3.0 * x).cos() * (-GRAVITY);
        v = v.clamp(-MAX_SPEED, MAX_SPEED);
        let x = (x + v).clamp(MIN_POSITION, MAX_POSITION);
        // hitting the left wall kills leftward momentum
        if x == MIN_POSITION && v < 0.0 {
            v = 0.0;
        }
        StateVector::from([x, v])
    }

    fn dim_names(&self) -> Vec<String> {
        ["x", "x_dot"].map(String::from).to_vec()
    }
}

fn at_goal(state: &StateVector) -> bool {
    state[0] >= GOAL_POSITION
}

/// Reach `x >= 0.5` within `step_bound` steps.
pub fn spec(step_bound: usize) -> ReachWithin {
    ReachWithin::new(at_goal, step_bound)
}

pub fn benchmark() -> Benchmark {
    Benchmark {
        name: "mountaincar",
        env: Box::new(MountainCar::new()),
        mode: Mode::Minimise,
        init_intervals: vec![(-0.6, -0.4), (0.0, 0.0)],
        default_increments: vec![0.05, 0.005],
        default_step_bound: 10_000,
        make_spec: |k| Box::new(spec(k)) as Box<dyn Specification>,
    }
}
