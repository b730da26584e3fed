//! Cart-pole balancing: keep the pole upright as long as possible.
//!
//! State `(x, x_dot, theta, theta_dot)`; pushing the cart with a fixed-
//! magnitude force left or right, Euler-integrated at 50 Hz. The run fails
//! as soon as the cart leaves the track or the pole tips past the cutoff
//! angle, and the objective is to maximise the number of surviving steps.

use std::f64::consts::PI;

use super::{AvoidUntil, Benchmark, Environment, Specification};
use crate::outcome::Mode;
use crate::state::{ActionId, StateBounds, StateVector};

const GRAVITY: f64 = 9.8;
const MASS_CART: f64 = 1.0;
const MASS_POLE: f64 = 0.1;
const TOTAL_MASS: f64 = MASS_CART + MASS_POLE;
/// Half the pole length.
const LENGTH: f64 = 0.5;
const POLE_MASS_LENGTH: f64 = MASS_POLE * LENGTH;
const FORCE_MAG: f64 = 10.0;
/// Integration step, seconds.
const TAU: f64 = 0.02;

/// Track half-width; leaving `|x| <= 2.4` fails the run.
pub const POSITION_LIMIT: f64 = 2.4;
/// Pole angle cutoff (12 degrees); tipping past `|theta| <= 24*pi/360` fails.
pub const ANGLE_LIMIT: f64 = 24.0 * PI / 360.0;

const ACTIONS: [ActionId; 2] = [ActionId(-1), ActionId(1)];

pub struct CartPole {
    bounds: StateBounds,
}

impl CartPole {
    pub fn new() -> Self {
        // velocities are unbounded in the dynamics; the declared +-3 range
        // only scopes the predicate grid
        let bounds = StateBounds::new(vec![
            (-POSITION_LIMIT, POSITION_LIMIT),
            (-3.0, 3.0),
            (-ANGLE_LIMIT, ANGLE_LIMIT),
            (-3.0, 3.0),
        ])
        .expect("static bounds are valid");
        CartPole { bounds }
    }
}

impl Default for CartPole {
    fn default() -> Self {
        Self::new()
    }
}

impl Environment for CartPole {
    fn dim(&self) -> usize {
        4
    }

    fn bounds(&self) -> &StateBounds {
        &self.bounds
    }

    fn actions(&self) -> &[ActionId] {
        &ACTIONS
    }

    fn step(&self, state: &StateVector, action: ActionId) -> StateVector {
        let (x, x_dot, theta, theta_dot) = (state[0], state[1], state[2], state[3]);
        let force = action.0 as f64 * FORCE_MAG;
        let cos_theta = theta.cos();
        let sin_theta = theta.sin();
        let temp = (force + POLE_MASS_LENGTH * theta_dot * theta_dot * sin_theta) / TOTAL_MASS;
        let theta_acc = (GRAVITY * sin_theta - cos_theta * temp)
            / (LENGTH * (4.0 / 3.0 - MASS_POLE * cos_theta * cos_theta / TOTAL_MASS));
        let x_acc = temp - POLE_MASS_LENGTH * theta_acc * cos_theta / TOTAL_MASS;
        StateVector::from([
            x + TAU * x_dot,
            x_dot + TAU * x_acc,
            theta + TAU * theta_dot,
            theta_dot + TAU * theta_acc,
        ])
    }

    fn dim_names(&self) -> Vec<String> {
        ["x", "x_dot", "theta", "theta_dot"]
            .map(String::from)
            .to_vec()
    }
}

fn fallen(state: &StateVector) -> bool {
    state[0].abs() > POSITION_LIMIT || state[2].abs() > ANGLE_LIMIT
}

/// Survive `step_bound` steps without leaving the track or dropping the pole.
pub fn spec(step_bound: usize) -> AvoidUntil {
    AvoidUntil::new(fallen, step_bound)
}

pub fn benchmark() -> Benchmark {
    Benchmark {
        name: "cartpole",
        env: Box::new(CartPole::new()),
        mode: Mode::Maximise,
        init_intervals: vec![(-0.05, 0.05); 4],
        default_increments: vec![0.1; 4],
        default_step_bound: 10_000,
        make_spec: |k| Box::new(spec(k)) as Box<dyn Specification>,
    }
}
