//! Classic cart-pole balancing with explicit Euler integration.

use rand::Rng;

use super::env::{Action, ActionSpace, Environment, Step};
use crate::rng::{data_stream, derive_rng};

pub const GRAVITY: f64 = 9.8;
pub const CART_MASS: f64 = 1.0;
pub const POLE_MASS: f64 = 0.1;
pub const TOTAL_MASS: f64 = CART_MASS + POLE_MASS;
/// Half the pole length.
pub const POLE_HALF_LENGTH: f64 = 0.5;
pub const POLE_MASS_LENGTH: f64 = POLE_MASS * POLE_HALF_LENGTH;
pub const FORCE_MAG: f64 = 10.0;
pub const TAU: f64 = 0.02;
pub const THETA_LIMIT: f64 = 12.0 * 2.0 * std::f64::consts::PI / 360.0;
pub const X_LIMIT: f64 = 2.4;
pub const DEFAULT_MAX_STEPS: usize = 200;

/// State `(x, x_dot, theta, theta_dot)`; action 0 pushes left, 1 pushes right.
#[derive(Clone, Debug)]
pub struct CartPole {
    state: [f64; 4],
    steps: usize,
    max_steps: usize,
}

impl CartPole {
    pub fn new(max_steps: usize) -> Self {
        CartPole {
            state: [0.0; 4],
            steps: 0,
            max_steps,
        }
    }

    pub fn state(&self) -> [f64; 4] {
        self.state
    }

    pub fn set_state(&mut self, state: [f64; 4]) {
        self.state = state;
        self.steps = 0;
    }
}

impl Default for CartPole {
    fn default() -> Self {
        CartPole::new(DEFAULT_MAX_STEPS)
    }
}

pub fn env_cartpole() -> CartPole {
    CartPole::default()
}

impl Environment for CartPole {
    fn state_dim(&self) -> usize {
        4
    }

    fn action_space(&self) -> ActionSpace {
        ActionSpace::Discrete(2)
    }

    fn reset(&mut self, seed: u64) -> Vec<f64> {
        let mut rng = derive_rng(seed, data_stream(1));
        for s in &mut self.state {
            *s = rng.gen_range(-0.05..=0.05);
        }
        self.steps = 0;
        self.state.to_vec()
    }

    fn step(&mut self, action: Action) -> Step {
        let push_right = match action {
            Action::Discrete(a) => a == 1,
            Action::Continuous(v) => v > 0.0,
        };
        let force = if push_right { FORCE_MAG } else { -FORCE_MAG };
        let [x, x_dot, theta, theta_dot] = self.state;
        let (sin, cos) = theta.sin_cos();
        let temp = (force + POLE_MASS_LENGTH * theta_dot * theta_dot * sin) / TOTAL_MASS;
        let theta_acc = (GRAVITY * sin - cos * temp)
            / (POLE_HALF_LENGTH * (4.0 / 3.0 - POLE_MASS * cos * cos / TOTAL_MASS));
        let x_acc = temp - POLE_MASS_LENGTH * theta_acc * cos / TOTAL_MASS;
        self.state = [
            x + TAU * x_dot,
            x_dot + TAU * x_acc,
            theta + TAU * theta_dot,
            theta_dot + TAU * theta_acc,
        ];
        self.steps += 1;
        let terminated = self.state[0].abs() > X_LIMIT || self.state[2].abs() > THETA_LIMIT;
        Step {
            state: self.state.to_vec(),
            reward: 1.0,
            terminated,
            truncated: !terminated && self.steps >= self.max_steps,
        }
    }

    fn max_steps(&self) -> usize {
        self.max_steps
    }

    fn return_upper_bound(&self) -> f64 {
        self.max_steps as f64
    }
}
