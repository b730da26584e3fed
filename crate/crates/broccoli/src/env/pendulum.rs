//! Pendulum swing-up: drive an underactuated pendulum to the upright
//! position and come to rest there in as few steps as possible.
//!
//! State `(theta, theta_dot)` with `theta = 0` pointing up, kept in
//! `(-pi, pi]`. The torque is too weak to lift the pendulum directly from
//! the bottom, so energy has to be pumped across swings.

use std::f64::consts::PI;

use super::{Benchmark, Environment, ReachWithin, Specification};
use crate::outcome::Mode;
use crate::state::{ActionId, StateBounds, StateVector};

const GRAVITY: f64 = 10.0;
const MASS: f64 = 1.0;
const LENGTH: f64 = 1.0;
const DT: f64 = 0.05;
/// Actions -1/+1 apply torque -+2.0.
const TORQUE_MAG: f64 = 2.0;
pub const MAX_SPEED: f64 = 8.0;

const ACTIONS: [ActionId; 2] = [ActionId(-1), ActionId(1)];

/// Wrap an angle into `(-pi, pi]`. Angles already in range pass through
/// unchanged so the reduction never costs precision on the common path.
fn wrap_angle(theta: f64) -> f64 {
    if theta > PI || theta <= -PI {
        let wrapped = (theta + PI).rem_euclid(2.0 * PI) - PI;
        if wrapped == -PI {
            PI
        } else {
            wrapped
        }
    } else {
        theta
    }
}

pub struct Pendulum {
    bounds: StateBounds,
}

impl Pendulum {
    pub fn new() -> Self {
        let bounds = StateBounds::new(vec![(-PI, PI), (-MAX_SPEED, MAX_SPEED)])
            .expect("static bounds are valid");
        Pendulum { bounds }
    }
}

impl Default for Pendulum {
    fn default() -> Self {
        Self::new()
    }
}

impl Environment for Pendulum {
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
        let (theta, theta_dot) = (state[0], state[1]);
        let torque = action.0 as f64 * TORQUE_MAG;
        let accel =
            3.0 * GRAVITY / (2.0 * LENGTH) * theta.sin() + 3.0 / (MASS * LENGTH * LENGTH) * torque;
        let new_theta_dot = (theta_dot + accel * DT).clamp(-MAX_SPEED, MAX_SPEED);
        let new_theta = wrap_angle(theta + new_theta_dot * DT);
        StateVector::from([new_theta, new_theta_dot])
    }

    fn dim_names(&self) -> Vec<String> {
        ["theta", "theta_dot"].map(String::from).to_vec()
    }
}

fn upright_and_still(state: &StateVector) -> bool {
    state[0].abs() <= 0.1 && state[1].abs() <= 0.1
}

/// Reach `|theta| <= 0.1` and `|theta_dot| <= 0.1` within `step_bound` steps.
pub fn spec(step_bound: usize) -> ReachWithin {
    ReachWithin::new(upright_and_still, step_bound)
}

pub fn benchmark() -> Benchmark {
    Benchmark {
        name: "pendulum",
        env: Box::new(Pendulum::new()),
        mode: Mode::Minimise,
        init_intervals: vec![(-0.8, -0.5), (-0.2, 0.2)],
        default_increments: vec![0.2, 0.2],
        default_step_bound: 10_000,
        make_spec: |k| Box::new(spec(k)) as Box<dyn Specification>,
    }
}
