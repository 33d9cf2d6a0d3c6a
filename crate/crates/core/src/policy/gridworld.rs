use super::env::{Action, ActionSpace, Environment, Step};
use crate::error::{GpError, Result};

/// Deterministic grid navigation from `(0, 0)` to a goal cell.
///
/// Actions: 0 up (row + 1), 1 right (col + 1), 2 down, 3 left; moves into a
/// wall leave the agent in place. Every move earns `step_reward`; the move that
/// enters the goal additionally earns `goal_reward` and ends the episode.
#[derive(Clone, Debug)]
pub struct GridWorld {
    width: usize,
    height: usize,
    goal: (usize, usize),
    step_reward: f64,
    goal_reward: f64,
    max_steps: usize,
    pos: (usize, usize),
    steps: usize,
}

impl GridWorld {
    pub fn new(width: usize, height: usize, goal: (usize, usize), step_reward: f64, goal_reward: f64) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(GpError::config("gridworld needs positive width and height"));
        }
        if goal.0 >= width || goal.1 >= height {
            return Err(GpError::config(format!(
                "goal {goal:?} lies outside the {width}x{height} grid"
            )));
        }
        Ok(GridWorld {
            width,
            height,
            goal,
            step_reward,
            goal_reward,
            max_steps: 2 * width * height,
            pos: (0, 0),
            steps: 0,
        })
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn position(&self) -> (usize, usize) {
        self.pos
    }

    pub fn goal(&self) -> (usize, usize) {
        self.goal
    }

    pub fn size(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    fn observe(&self) -> Vec<f64> {
        let norm = |v: usize, n: usize| if n > 1 { v as f64 / (n - 1) as f64 } else { 0.0 };
        vec![norm(self.pos.0, self.width), norm(self.pos.1, self.height)]
    }
}

/// Gridworld with step reward −1 and goal reward 0.
pub fn env_gridworld(width: usize, height: usize, goal: (usize, usize)) -> Result<GridWorld> {
    GridWorld::new(width, height, goal, -1.0, 0.0)
}

impl Environment for GridWorld {
    fn state_dim(&self) -> usize {
        2
    }

    fn action_space(&self) -> ActionSpace {
        ActionSpace::Discrete(4)
    }

    fn reset(&mut self, _seed: u64) -> Vec<f64> {
        self.pos = (0, 0);
        self.steps = 0;
        self.observe()
    }

    fn step(&mut self, action: Action) -> Step {
        let a = match action {
            Action::Discrete(a) => a,
            Action::Continuous(_) => 0,
        };
        let (c, r) = self.pos;
        self.pos = match a {
            0 => (c, (r + 1).min(self.height - 1)),
            1 => ((c + 1).min(self.width - 1), r),
            2 => (c, r.saturating_sub(1)),
            _ => (c.saturating_sub(1), r),
        };
        self.steps += 1;
        let terminated = self.pos == self.goal;
        let reward = self.step_reward + if terminated { self.goal_reward } else { 0.0 };
        Step {
            state: self.observe(),
            reward,
            terminated,
            truncated: !terminated && self.steps >= self.max_steps,
        }
    }

    fn max_steps(&self) -> usize {
        self.max_steps
    }

    fn return_upper_bound(&self) -> f64 {
        self.goal_reward.max(0.0)
    }
}
