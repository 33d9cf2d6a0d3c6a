use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum ActionSpace {
    Discrete(usize),
    Continuous1D { lo: f64, hi: f64 },
}

impl ActionSpace {
    pub fn contains(&self, action: Action) -> bool {
        match (*self, action) {
            (ActionSpace::Discrete(n), Action::Discrete(a)) => a < n,
            (ActionSpace::Continuous1D { lo, hi }, Action::Continuous(v)) => lo <= v && v <= hi,
            _ => false,
        }
    }

    /// Program outputs the default decoder expects: one for binary or
    /// continuous spaces, `n` otherwise.
    pub fn default_outputs(&self) -> usize {
        match *self {
            ActionSpace::Discrete(2) | ActionSpace::Continuous1D { .. } => 1,
            ActionSpace::Discrete(n) => n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Action {
    Discrete(usize),
    Continuous(f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Step {
    pub state: Vec<f64>,
    pub reward: f64,
    pub terminated: bool,
    pub truncated: bool,
}

/// An episodic MDP. `reset` is deterministic in its seed and `step` is never
/// called after a terminated or truncated step.
pub trait Environment: Send {
    fn state_dim(&self) -> usize;
    fn action_space(&self) -> ActionSpace;
    fn reset(&mut self, seed: u64) -> Vec<f64>;
    fn step(&mut self, action: Action) -> Step;
    fn max_steps(&self) -> usize;

    /// Upper bound on any episode's return, used to turn returns into costs
    /// when no target return is configured.
    fn return_upper_bound(&self) -> f64;
}

/// Maps program outputs to a legal action.
///
/// Discrete spaces take the argmax of the first `n` outputs (ties to the
/// lowest index, NaN never wins); a single output with `Discrete(2)` picks
/// action 1 iff it is positive. Continuous spaces clamp the first output, NaN
/// mapping to the lower bound.
pub fn decode_action(outputs: &[f64], space: ActionSpace) -> Action {
    match space {
        ActionSpace::Discrete(2) if outputs.len() == 1 => Action::Discrete(usize::from(outputs[0] > 0.0)),
        ActionSpace::Discrete(n) => {
            let mut best = 0;
            let mut best_value = f64::NEG_INFINITY;
            for (i, &v) in outputs.iter().take(n).enumerate() {
                if v > best_value {
                    best = i;
                    best_value = v;
                }
            }
            Action::Discrete(best)
        }
        ActionSpace::Continuous1D { lo, hi } => {
            let v = outputs.first().copied().unwrap_or(lo);
            Action::Continuous(if v.is_nan() { lo } else { v.clamp(lo, hi) })
        }
    }
}
