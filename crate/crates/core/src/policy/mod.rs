//! Policy search: environments, the agent bridging programs to actions, and
//! return-based fitness.

mod cartpole;
mod env;
mod gridworld;

pub use cartpole::{env_cartpole, CartPole};
pub use env::{decode_action, Action, ActionSpace, Environment, Step};
pub use gridworld::{env_gridworld, GridWorld};

pub mod cartpole_constants {
    pub use super::cartpole::{
        CART_MASS, DEFAULT_MAX_STEPS, FORCE_MAG, GRAVITY, POLE_HALF_LENGTH, POLE_MASS, TAU,
        THETA_LIMIT, X_LIMIT,
    };
}

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GpError, Result};
use crate::evolution::{Problem, Program};
use crate::primitives::Domain;
use crate::rng::GpRng;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpisodeConfig {
    pub episodes: usize,
    pub gamma: f64,
    pub max_steps: usize,
    pub base_seed: u64,
}

impl Default for EpisodeConfig {
    fn default() -> Self {
        EpisodeConfig {
            episodes: 5,
            gamma: 1.0,
            max_steps: cartpole::DEFAULT_MAX_STEPS,
            base_seed: 0,
        }
    }
}

impl EpisodeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.episodes == 0 {
            return Err(GpError::config("episodes must be at least 1"));
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(GpError::config(format!("gamma must lie in (0, 1], got {}", self.gamma)));
        }
        if self.max_steps == 0 {
            return Err(GpError::config("max_steps must be at least 1"));
        }
        Ok(())
    }
}

/// A program acting as a deterministic policy.
pub struct Agent<'a, P> {
    pub program: &'a P,
    pub space: ActionSpace,
}

impl<'a, P: Program> Agent<'a, P> {
    pub fn new(program: &'a P, space: ActionSpace) -> Self {
        Agent { program, space }
    }

    /// `None` when the program emits NaN.
    pub fn act(&self, state: &[f64]) -> Option<Action> {
        let out = self.program.evaluate::<f64>(state);
        if out.iter().any(|v| v.is_nan()) {
            return None;
        }
        Some(decode_action(&out, self.space))
    }
}

/// Mean discounted return over the episode battery. Episode `e` starts from
/// `reset(base_seed + e)`; the reward of the `t`-th step (t from 1) is weighted
/// by `gamma^t`. A NaN program output ends the episode with the return so far.
pub fn rollout<P: Program>(agent: &Agent<'_, P>, env: &mut dyn Environment, cfg: &EpisodeConfig) -> f64 {
    let mut total = 0.0;
    for e in 0..cfg.episodes {
        let mut state = env.reset(cfg.base_seed.wrapping_add(e as u64));
        let mut discount = 1.0;
        let mut ret = 0.0;
        for _ in 0..cfg.max_steps {
            let Some(action) = agent.act(&state) else {
                break;
            };
            let step = env.step(action);
            discount *= cfg.gamma;
            ret += discount * step.reward;
            if step.terminated || step.truncated {
                break;
            }
            state = step.state;
        }
        total += ret;
    }
    total / cfg.episodes as f64
}

/// Environment registry entry: `cartpole` or `gridworld:WxH:gx,gy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnvSpec {
    CartPole,
    GridWorld {
        width: usize,
        height: usize,
        goal: (usize, usize),
    },
}

impl EnvSpec {
    pub fn build(&self, max_steps: usize) -> Result<Box<dyn Environment>> {
        Ok(match *self {
            EnvSpec::CartPole => Box::new(CartPole::new(max_steps)),
            EnvSpec::GridWorld { width, height, goal } => {
                Box::new(env_gridworld(width, height, goal)?.with_max_steps(max_steps))
            }
        })
    }
}

impl FromStr for EnvSpec {
    type Err = GpError;

    fn from_str(s: &str) -> Result<Self> {
        if s == "cartpole" {
            return Ok(EnvSpec::CartPole);
        }
        let bad = || {
            GpError::config(format!(
                "unknown environment `{s}`; valid names: cartpole, gridworld:WxH:gx,gy"
            ))
        };
        let rest = s.strip_prefix("gridworld:").ok_or_else(bad)?;
        let (size, goal) = rest.split_once(':').ok_or_else(bad)?;
        let (w, h) = size.split_once('x').ok_or_else(bad)?;
        let (gx, gy) = goal.split_once(',').ok_or_else(bad)?;
        let num = |v: &str| v.trim().parse::<usize>().map_err(|_| bad());
        let spec = EnvSpec::GridWorld {
            width: num(w)?,
            height: num(h)?,
            goal: (num(gx)?, num(gy)?),
        };
        spec.build(1)?;
        Ok(spec)
    }
}

impl fmt::Display for EnvSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnvSpec::CartPole => f.write_str("cartpole"),
            EnvSpec::GridWorld { width, height, goal } => {
                write!(f, "gridworld:{width}x{height}:{},{}", goal.0, goal.1)
            }
        }
    }
}

pub type EnvFactory = Arc<dyn Fn() -> Box<dyn Environment> + Send + Sync>;

/// Environment factory, episode battery and optional success target.
#[derive(Clone)]
pub struct PolicyProblem {
    pub name: String,
    factory: EnvFactory,
    episodes: EpisodeConfig,
    target_return: Option<f64>,
    state_dim: usize,
    space: ActionSpace,
    n_outputs: usize,
    return_bound: f64,
}

impl fmt::Debug for PolicyProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolicyProblem")
            .field("name", &self.name)
            .field("episodes", &self.episodes)
            .field("target_return", &self.target_return)
            .finish()
    }
}

impl PolicyProblem {
    pub fn new(
        name: impl Into<String>,
        factory: EnvFactory,
        episodes: EpisodeConfig,
        target_return: Option<f64>,
    ) -> Result<Self> {
        episodes.validate()?;
        let probe = factory();
        let space = probe.action_space();
        Ok(PolicyProblem {
            name: name.into(),
            state_dim: probe.state_dim(),
            n_outputs: space.default_outputs(),
            return_bound: probe.return_upper_bound(),
            space,
            factory,
            episodes,
            target_return,
        })
    }

    /// Registry environment whose horizon is the episode config's `max_steps`.
    pub fn from_spec(spec: &EnvSpec, episodes: EpisodeConfig, target_return: Option<f64>) -> Result<Self> {
        spec.build(episodes.max_steps)?;
        let s = spec.clone();
        let steps = episodes.max_steps;
        let factory: EnvFactory = Arc::new(move || s.build(steps).expect("validated environment"));
        Self::new(spec.to_string(), factory, episodes, target_return)
    }

    /// Overrides the number of program outputs (e.g. two for argmax over a binary space).
    pub fn with_outputs(mut self, n_outputs: usize) -> Result<Self> {
        if n_outputs == 0 {
            return Err(GpError::config("policy programs need at least one output"));
        }
        if let ActionSpace::Discrete(n) = self.space {
            if n_outputs != n && !(n == 2 && n_outputs == 1) {
                return Err(GpError::config(format!(
                    "Discrete({n}) needs {n} outputs{}",
                    if n == 2 { " or 1" } else { "" }
                )));
            }
        }
        self.n_outputs = n_outputs;
        Ok(self)
    }

    pub fn action_space(&self) -> ActionSpace {
        self.space
    }

    pub fn episodes(&self) -> &EpisodeConfig {
        &self.episodes
    }

    pub fn target_return(&self) -> Option<f64> {
        self.target_return
    }

    pub fn make_env(&self) -> Box<dyn Environment> {
        (self.factory)()
    }

    pub fn mean_return<P: Program>(&self, program: &P) -> f64 {
        let mut env = self.make_env();
        rollout(&Agent::new(program, self.space), env.as_mut(), &self.episodes)
    }

    fn return_to_cost(&self, mean: f64) -> f64 {
        let cost = match self.target_return {
            Some(target) => target - mean,
            None => self.return_bound - mean,
        };
        cost.max(0.0)
    }
}

/// Cost of a policy: shortfall from the target return, or from the
/// environment's return bound when no target is set.
pub fn fitness_policy<P: Program>(program: &P, problem: &PolicyProblem) -> f64 {
    problem.return_to_cost(problem.mean_return(program))
}

impl Problem for PolicyProblem {
    fn domain(&self) -> Domain {
        Domain::Real
    }

    fn n_inputs(&self) -> usize {
        self.state_dim
    }

    fn n_outputs(&self) -> usize {
        self.n_outputs
    }

    fn cost<P: Program>(&self, program: &P, _rng: &mut GpRng) -> f64 {
        fitness_policy(program, self)
    }

    fn ideal_threshold(&self) -> Option<f64> {
        self.target_return.map(|_| 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names() {
        assert_eq!("cartpole".parse::<EnvSpec>().unwrap(), EnvSpec::CartPole);
        let g: EnvSpec = "gridworld:5x4:4,3".parse().unwrap();
        assert_eq!(
            g,
            EnvSpec::GridWorld {
                width: 5,
                height: 4,
                goal: (4, 3)
            }
        );
        assert_eq!(g.to_string(), "gridworld:5x4:4,3");
        assert!("gridworld:5x4:5,3".parse::<EnvSpec>().is_err());
        assert!("mountaincar".parse::<EnvSpec>().is_err());
    }

    #[test]
    fn return_to_cost_definitions() {
        let ep = EpisodeConfig::default();
        let p = PolicyProblem::from_spec(&EnvSpec::CartPole, ep, Some(200.0)).unwrap();
        assert_eq!(p.return_to_cost(200.0), 0.0);
        assert_eq!(p.return_to_cost(195.0), 5.0);
        assert_eq!(p.return_to_cost(250.0), 0.0);
        let free = PolicyProblem::from_spec(&EnvSpec::CartPole, ep, None).unwrap();
        assert_eq!(free.return_to_cost(150.0), 50.0);
        assert_eq!(free.ideal_threshold(), None);
    }

    #[test]
    fn episode_config_validation() {
        let bad = EpisodeConfig {
            gamma: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = EpisodeConfig {
            episodes: 0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn output_override_checks_space() {
        let ep = EpisodeConfig::default();
        let p = PolicyProblem::from_spec(&EnvSpec::CartPole, ep, None).unwrap();
        assert_eq!(p.n_outputs(), 1);
        assert_eq!(p.clone().with_outputs(2).unwrap().n_outputs(), 2);
        assert!(p.with_outputs(3).is_err());
    }
}
