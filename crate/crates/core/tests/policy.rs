use crossgp::policy::{
    env_cartpole, env_gridworld, fitness_policy, rollout, Action, ActionSpace, Agent, CartPole, EnvSpec,
    EpisodeConfig, Environment, PolicyProblem, Step,
};
use crossgp::tgp::TreeConfig;
use crossgp::{derive_rng, Domain, FunctionSet, GpModel, Program, TreeModel, Value};

/// Program emitting fixed outputs regardless of the state.
struct Fixed(Vec<f64>, usize);

impl Program for Fixed {
    fn n_inputs(&self) -> usize {
        self.1
    }
    fn n_outputs(&self) -> usize {
        self.0.len()
    }
    fn evaluate<V: Value>(&self, _inputs: &[V]) -> Vec<V> {
        self.0.iter().map(|&v| V::from_scalar(v)).collect()
    }
}

fn one_hot(action: usize) -> Fixed {
    let mut v = vec![0.0; 4];
    v[action] = 1.0;
    Fixed(v, 2)
}

fn gamma1(max_steps: usize) -> EpisodeConfig {
    EpisodeConfig {
        episodes: 1,
        gamma: 1.0,
        max_steps,
        base_seed: 0,
    }
}

#[test]
fn gridworld_two_step_trace() {
    let mut env = env_gridworld(2, 2, (0, 1)).unwrap();
    let up = one_hot(0);
    let agent = Agent::new(&up, ActionSpace::Discrete(4));
    assert_eq!(rollout(&agent, &mut env, &gamma1(8)), -1.0);
}

#[test]
fn gridworld_wall_walker_pays_horizon() {
    let mut env = env_gridworld(5, 5, (4, 4)).unwrap();
    let max_steps = env.max_steps();
    let left = one_hot(3);
    let agent = Agent::new(&left, ActionSpace::Discrete(4));
    assert_eq!(rollout(&agent, &mut env, &gamma1(max_steps)), -(max_steps as f64));
}

#[test]
fn gridworld_is_deterministic() {
    let mut a = env_gridworld(4, 3, (3, 2)).unwrap();
    let mut b = env_gridworld(4, 3, (3, 2)).unwrap();
    assert_eq!(a.reset(1), b.reset(99));
    for action in [1, 1, 0, 2, 3, 0, 0, 1] {
        assert_eq!(a.step(Action::Discrete(action)), b.step(Action::Discrete(action)));
    }
}

#[test]
fn cartpole_push_right_from_rest() {
    let mut env = CartPole::new(200);
    env.reset(0);
    env.set_state([0.0; 4]);
    let Step { state, .. } = env.step(Action::Discrete(1));
    assert!(state[1] > 0.0);
    assert!(state[3] < 0.0);
}

#[test]
fn cartpole_reset_is_seeded() {
    let mut a = env_cartpole();
    let mut b = env_cartpole();
    assert_eq!(a.reset(17), b.reset(17));
    assert!(a.reset(17).iter().all(|v| v.abs() <= 0.05));
}

#[test]
fn constant_reward_geometric_sums() {
    struct Ones(usize, usize);
    impl Environment for Ones {
        fn state_dim(&self) -> usize {
            1
        }
        fn action_space(&self) -> ActionSpace {
            ActionSpace::Discrete(2)
        }
        fn reset(&mut self, _seed: u64) -> Vec<f64> {
            self.1 = 0;
            vec![0.0]
        }
        fn step(&mut self, _a: Action) -> Step {
            self.1 += 1;
            Step {
                state: vec![0.0],
                reward: 1.0,
                terminated: false,
                truncated: self.1 >= self.0,
            }
        }
        fn max_steps(&self) -> usize {
            self.0
        }
        fn return_upper_bound(&self) -> f64 {
            self.0 as f64
        }
    }
    let p = Fixed(vec![0.0], 1);
    let agent = Agent::new(&p, ActionSpace::Discrete(2));
    let cfg = |gamma| EpisodeConfig {
        episodes: 2,
        gamma,
        max_steps: 3,
        base_seed: 0,
    };
    assert_eq!(rollout(&agent, &mut Ones(3, 0), &cfg(1.0)), 3.0);
    assert_eq!(rollout(&agent, &mut Ones(3, 0), &cfg(0.5)), 0.875);
}

#[test]
fn policy_cost_definition() {
    let spec = EnvSpec::GridWorld {
        width: 3,
        height: 3,
        goal: (2, 2),
    };
    let with_target = |t| PolicyProblem::from_spec(&spec, gamma1(18), Some(t)).unwrap();
    let right_then_stuck = one_hot(1);
    let mean = with_target(0.0).mean_return(&right_then_stuck);
    assert_eq!(mean, -18.0);
    assert_eq!(fitness_policy(&right_then_stuck, &with_target(-18.0)), 0.0);
    assert_eq!(fitness_policy(&right_then_stuck, &with_target(-13.0)), 5.0);
    assert_eq!(fitness_policy(&right_then_stuck, &with_target(-30.0)), 0.0);
    let no_target = PolicyProblem::from_spec(&spec, gamma1(18), None).unwrap();
    assert_eq!(fitness_policy(&right_then_stuck, &no_target), 18.0);
}

#[test]
fn random_policies_respect_return_bounds() {
    let fset = FunctionSet::real_default();
    let cart = PolicyProblem::from_spec(&EnvSpec::CartPole, EpisodeConfig::default(), None).unwrap();
    let model = TreeModel::new(fset.clone(), TreeConfig::new(4, 1, Domain::Real)).unwrap();
    let grid = PolicyProblem::from_spec(
        &EnvSpec::GridWorld {
            width: 4,
            height: 4,
            goal: (3, 3),
        },
        gamma1(32),
        None,
    )
    .unwrap();
    let gmodel = TreeModel::new(fset, TreeConfig::new(2, 4, Domain::Real)).unwrap();
    let mut rng = derive_rng(8, 0);
    for g in model.initialize(100, &mut rng) {
        let r = cart.mean_return(&model.decode(&g));
        assert!((0.0..=200.0).contains(&r));
        assert_eq!(r, cart.mean_return(&model.decode(&g)));
    }
    for g in gmodel.initialize(100, &mut rng) {
        let r = grid.mean_return(&gmodel.decode(&g));
        assert!((-32.0..=0.0).contains(&r));
    }
}
