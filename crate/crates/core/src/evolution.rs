//! Model and problem contracts plus the evolutionary loop shared by every
//! representation.

use std::cmp::Ordering;
use std::fmt::Debug;

use rand::seq::index;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{GpError, Result};
use crate::primitives::Domain;
use crate::rng::{derive_rng, eval_stream, GpRng, MASTER_STREAM};
use crate::scalar::Value;

/// An executable program decoded from a genome.
///
/// Evaluation is pure: equal inputs give equal outputs, and the output length
/// is always `n_outputs()`.
pub trait Program: Sync {
    fn n_inputs(&self) -> usize;
    fn n_outputs(&self) -> usize;
    fn evaluate<V: Value>(&self, inputs: &[V]) -> Vec<V>;
}

/// A problem that assigns a non-negative cost to a program (lower is better).
pub trait Problem: Sync {
    fn domain(&self) -> Domain;
    fn n_inputs(&self) -> usize;
    fn n_outputs(&self) -> usize;

    /// Cost of `program`. `rng` is a stream private to this evaluation.
    fn cost<P: Program>(&self, program: &P, rng: &mut GpRng) -> f64;

    /// Costs at or below this value count as solved. `None` means the problem
    /// has no success criterion.
    fn ideal_threshold(&self) -> Option<f64>;
}

/// A program representation: initialization, breeding, decoding.
pub trait GpModel: Sync {
    type Genome: Clone + Debug + Send + Sync;
    type Program<'a>: Program
    where
        Self: 'a;

    fn model_name(&self) -> &str;
    fn domain(&self) -> Domain;
    fn n_inputs(&self) -> usize;
    fn n_outputs(&self) -> usize;

    fn initialize(&self, count: usize, rng: &mut GpRng) -> Vec<Self::Genome>;

    /// Produces one offspring. `parents` holds one genome for mutation-only
    /// schemes and two for generational breeding.
    fn breed(&self, parents: &[&Self::Genome], hp: &Hyperparameters, rng: &mut GpRng)
        -> Self::Genome;

    fn decode<'a>(&'a self, genome: &'a Self::Genome) -> Self::Program<'a>;

    /// Human-readable rendering of the genome's program.
    fn describe(&self, genome: &Self::Genome) -> String;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Tournament selection with elitism, whole-population replacement.
    Generational,
    /// (μ+λ) with offspring preferred over parents on equal cost.
    OnePlusLambda,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Hyperparameters {
    pub population_size: usize,
    pub max_evaluations: u64,
    pub mutation_rate: f64,
    pub crossover_rate: f64,
    pub tournament_size: usize,
    pub elitism: usize,
    pub mu: usize,
    pub lambda: usize,
    pub seed: u64,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Hyperparameters {
            population_size: 100,
            max_evaluations: 100_000,
            mutation_rate: 0.1,
            crossover_rate: 0.9,
            tournament_size: 3,
            elitism: 1,
            mu: 1,
            lambda: 4,
            seed: 0,
        }
    }
}

impl Hyperparameters {
    /// Checks the fields used by `scheme`; the others are ignored.
    pub fn validate(&self, scheme: Scheme) -> Result<()> {
        let bad = |m: String| Err(GpError::Config(m));
        if self.population_size == 0 {
            return bad("population_size must be at least 1".into());
        }
        if self.max_evaluations == 0 {
            return bad("max_evaluations must be at least 1".into());
        }
        for (name, p) in [
            ("mutation_rate", self.mutation_rate),
            ("crossover_rate", self.crossover_rate),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} must lie in [0, 1], got {p}"));
            }
        }
        if scheme == Scheme::OnePlusLambda {
            if self.mu == 0 || self.lambda == 0 {
                return bad("mu and lambda must be at least 1".into());
            }
            return Ok(());
        }
        if self.tournament_size == 0 || self.tournament_size > self.population_size {
            return bad(format!(
                "tournament_size must lie in [1, population_size={}], got {}",
                self.population_size, self.tournament_size
            ));
        }
        if self.elitism > self.population_size {
            return bad(format!(
                "elitism {} exceeds population_size {}",
                self.elitism, self.population_size
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fitness {
    pub cost: f64,
    /// 1-based index of the evaluation that produced this fitness.
    pub evaluations_used: u64,
}

#[derive(Clone, Debug)]
pub struct Individual<G> {
    pub genome: G,
    pub fitness: Option<Fitness>,
}

impl<G> Individual<G> {
    pub fn new(genome: G) -> Self {
        Individual {
            genome,
            fitness: None,
        }
    }

    fn cost(&self) -> Option<f64> {
        self.fitness.map(|f| f.cost)
    }
}

/// True when `fitness` reaches the problem's ideal threshold.
pub fn is_ideal<P: Problem + ?Sized>(fitness: &Fitness, problem: &P) -> bool {
    problem
        .ideal_threshold()
        .is_some_and(|threshold| fitness.cost <= threshold)
}

/// Winner among the candidate indices: lowest cost, then lowest index.
pub fn tournament_winner<G>(population: &[Individual<G>], candidates: &[usize]) -> Result<usize> {
    let mut best: Option<(f64, usize)> = None;
    for &i in candidates {
        let cost = population[i]
            .cost()
            .ok_or_else(|| GpError::Internal(format!("individual {i} entered selection unevaluated")))?;
        let better = match best {
            None => true,
            Some((c, j)) => match cost.total_cmp(&c) {
                Ordering::Less => true,
                Ordering::Equal => i < j,
                Ordering::Greater => false,
            },
        };
        if better {
            best = Some((cost, i));
        }
    }
    best.map(|(_, i)| i)
        .ok_or_else(|| GpError::Internal("tournament with no candidates".into()))
}

/// Samples `k` distinct members and returns the index of the best.
pub fn tournament_select<G>(
    population: &[Individual<G>],
    k: usize,
    rng: &mut GpRng,
) -> Result<usize> {
    if population.is_empty() || k == 0 || k > population.len() {
        return Err(GpError::Internal(format!(
            "tournament size {k} invalid for population of {}",
            population.len()
        )));
    }
    let sampled = index::sample(rng, population.len(), k).into_vec();
    tournament_winner(population, &sampled)
}

/// Outcome of a single seeded run.
#[derive(Clone, Debug)]
pub struct EvolutionOutcome<G> {
    pub best: Individual<G>,
    pub success: bool,
    pub evaluations_used: u64,
    pub evaluations_to_success: Option<u64>,
    /// Best cost in the population after each generation, generation 0 being
    /// the initial population.
    pub trajectory: Vec<(u64, f64)>,
}

impl<G> EvolutionOutcome<G> {
    pub fn best_cost(&self) -> f64 {
        self.best.fitness.map_or(f64::INFINITY, |f| f.cost)
    }
}

struct Tracker<'p, P: ?Sized, G> {
    problem: &'p P,
    best: Option<Individual<G>>,
    evaluations: u64,
    first_success: Option<u64>,
    trajectory: Vec<(u64, f64)>,
}

impl<'p, P: Problem + ?Sized, G: Clone> Tracker<'p, P, G> {
    fn observe(&mut self, batch: &[Individual<G>]) {
        for ind in batch {
            let fit = ind.fitness.expect("evaluated");
            if self.first_success.is_none() && is_ideal(&fit, self.problem) {
                self.first_success = Some(fit.evaluations_used);
            }
            if self.best.as_ref().is_none_or(|b| fit.cost < b.cost().unwrap()) {
                self.best = Some(ind.clone());
            }
        }
    }

    fn record(&mut self, generation: u64, population: &[Individual<G>]) {
        let best = population
            .iter()
            .filter_map(|i| i.cost())
            .min_by(|a, b| a.total_cmp(b))
            .unwrap_or(f64::INFINITY);
        self.trajectory.push((generation, best));
    }

    fn finish(self) -> EvolutionOutcome<G> {
        EvolutionOutcome {
            best: self.best.expect("at least one evaluation"),
            success: self.first_success.is_some(),
            evaluations_used: self.evaluations,
            evaluations_to_success: self.first_success,
            trajectory: self.trajectory,
        }
    }
}

fn evaluate_batch<M, P>(
    model: &M,
    problem: &P,
    seed: u64,
    generation: u64,
    offset: u64,
    genomes: Vec<M::Genome>,
) -> Vec<Individual<M::Genome>>
where
    M: GpModel,
    P: Problem + ?Sized,
{
    let costs: Vec<f64> = genomes
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let program = model.decode(g);
            let mut rng = derive_rng(seed, eval_stream(generation, i as u64));
            let cost = problem.cost(&program, &mut rng);
            if cost.is_nan() {
                f64::MAX
            } else {
                cost.max(0.0)
            }
        })
        .collect();
    genomes
        .into_iter()
        .zip(costs)
        .enumerate()
        .map(|(i, (genome, cost))| Individual {
            genome,
            fitness: Some(Fitness {
                cost,
                evaluations_used: offset + i as u64 + 1,
            }),
        })
        .collect()
}

fn rank<G>(population: &[Individual<G>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..population.len()).collect();
    order.sort_by(|&a, &b| {
        population[a]
            .cost()
            .unwrap()
            .total_cmp(&population[b].cost().unwrap())
            .then(a.cmp(&b))
    });
    order
}

/// Runs one seeded evolutionary search.
///
/// Whole generations are evaluated, so the budget may be exceeded by at most
/// one generation (`population_size - elitism` for the generational scheme,
/// `lambda` for (μ+λ)). The run stops early once any evaluation reaches the
/// problem's ideal threshold.
pub fn evolve<M, P>(
    model: &M,
    problem: &P,
    hp: &Hyperparameters,
    scheme: Scheme,
) -> Result<EvolutionOutcome<M::Genome>>
where
    M: GpModel,
    P: Problem + ?Sized,
{
    if model.domain() != problem.domain() {
        return Err(GpError::DomainMismatch {
            model: model.domain(),
            problem: problem.domain(),
        });
    }
    if model.n_inputs() != problem.n_inputs() || model.n_outputs() != problem.n_outputs() {
        return Err(GpError::config(format!(
            "model shape {}→{} does not match problem shape {}→{}",
            model.n_inputs(),
            model.n_outputs(),
            problem.n_inputs(),
            problem.n_outputs()
        )));
    }
    hp.validate(scheme)?;

    let mut rng = derive_rng(hp.seed, MASTER_STREAM);
    let mut tracker = Tracker {
        problem,
        best: None,
        evaluations: 0,
        first_success: None,
        trajectory: Vec::new(),
    };

    let initial = match scheme {
        Scheme::Generational => hp.population_size,
        Scheme::OnePlusLambda => hp.mu,
    };
    let genomes = model.initialize(initial, &mut rng);
    let mut population = evaluate_batch(model, problem, hp.seed, 0, 0, genomes);
    tracker.evaluations = population.len() as u64;
    tracker.observe(&population);
    tracker.record(0, &population);

    let mut generation = 0u64;
    while tracker.first_success.is_none() && tracker.evaluations < hp.max_evaluations {
        generation += 1;
        population = match scheme {
            Scheme::Generational => {
                let n_offspring = hp.population_size - hp.elitism;
                if n_offspring == 0 {
                    break;
                }
                let order = rank(&population);
                let mut children = Vec::with_capacity(n_offspring);
                for _ in 0..n_offspring {
                    let a = tournament_select(&population, hp.tournament_size, &mut rng)?;
                    let b = tournament_select(&population, hp.tournament_size, &mut rng)?;
                    children.push(model.breed(
                        &[&population[a].genome, &population[b].genome],
                        hp,
                        &mut rng,
                    ));
                }
                let offspring = evaluate_batch(
                    model,
                    problem,
                    hp.seed,
                    generation,
                    tracker.evaluations,
                    children,
                );
                tracker.evaluations += offspring.len() as u64;
                tracker.observe(&offspring);
                let mut next: Vec<_> = order[..hp.elitism]
                    .iter()
                    .map(|&i| population[i].clone())
                    .collect();
                next.extend(offspring);
                next
            }
            Scheme::OnePlusLambda => {
                let order = rank(&population);
                let children: Vec<_> = (0..hp.lambda)
                    .map(|j| {
                        let parent = &population[order[j % order.len()]].genome;
                        model.breed(&[parent], hp, &mut rng)
                    })
                    .collect();
                let offspring = evaluate_batch(
                    model,
                    problem,
                    hp.seed,
                    generation,
                    tracker.evaluations,
                    children,
                );
                tracker.evaluations += offspring.len() as u64;
                tracker.observe(&offspring);
                // offspring win ties against parents (neutral drift)
                let mut pool: Vec<(u8, usize, Individual<M::Genome>)> = offspring
                    .into_iter()
                    .enumerate()
                    .map(|(i, ind)| (0u8, i, ind))
                    .chain(population.into_iter().enumerate().map(|(i, ind)| (1u8, i, ind)))
                    .collect();
                pool.sort_by(|a, b| {
                    a.2.cost()
                        .unwrap()
                        .total_cmp(&b.2.cost().unwrap())
                        .then(a.0.cmp(&b.0))
                        .then(a.1.cmp(&b.1))
                });
                pool.truncate(hp.mu);
                pool.into_iter().map(|(_, _, ind)| ind).collect()
            }
        };
        tracker.record(generation, &population);
    }

    Ok(tracker.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn evaluated(costs: &[f64]) -> Vec<Individual<()>> {
        costs
            .iter()
            .enumerate()
            .map(|(i, &cost)| Individual {
                genome: (),
                fitness: Some(Fitness {
                    cost,
                    evaluations_used: i as u64 + 1,
                }),
            })
            .collect()
    }

    #[test]
    fn winner_of_hand_traced_pair() {
        let pop = evaluated(&[3.0, 1.0, 2.0]);
        assert_eq!(tournament_winner(&pop, &[0, 2]).unwrap(), 2);
    }

    #[test]
    fn full_tournament_returns_global_best_lowest_index() {
        let pop = evaluated(&[2.0, 0.5, 7.0, 0.5]);
        let mut rng = derive_rng(1, 0);
        for _ in 0..50 {
            assert_eq!(tournament_select(&pop, 4, &mut rng).unwrap(), 1);
        }
    }

    #[test]
    fn unit_tournament_is_uniform() {
        let pop = evaluated(&[1.0, 2.0, 3.0, 4.0]);
        let mut rng = derive_rng(9, 0);
        let mut counts = [0usize; 4];
        for _ in 0..4000 {
            counts[tournament_select(&pop, 1, &mut rng).unwrap()] += 1;
        }
        for c in counts {
            assert!((800..1200).contains(&c), "{counts:?}");
        }
    }

    #[test]
    fn unevaluated_member_is_internal_error() {
        let mut pop = evaluated(&[1.0, 2.0]);
        pop[1].fitness = None;
        assert!(matches!(
            tournament_winner(&pop, &[0, 1]),
            Err(GpError::Internal(_))
        ));
    }

    #[test]
    fn selection_never_worse_than_all_sampled() {
        let pop = evaluated(&[5.0, 3.0, 9.0, 1.0, 4.0, 4.0]);
        let mut rng = derive_rng(3, 0);
        for k in 1..=pop.len() {
            for _ in 0..200 {
                let w = tournament_select(&pop, k, &mut rng).unwrap();
                assert!(pop.iter().filter(|p| p.cost().unwrap() < pop[w].cost().unwrap()).count() <= pop.len() - k);
            }
        }
    }

    #[test]
    fn hyperparameter_validation() {
        let g = Scheme::Generational;
        let mut hp = Hyperparameters::default();
        assert!(hp.validate(g).is_ok());
        hp.tournament_size = hp.population_size + 1;
        assert!(hp.validate(g).is_err());
        assert!(hp.validate(Scheme::OnePlusLambda).is_ok());
        hp.lambda = 0;
        assert!(hp.validate(Scheme::OnePlusLambda).is_err());
        let hp = Hyperparameters {
            mutation_rate: 1.5,
            ..Default::default()
        };
        assert!(hp.validate(Scheme::OnePlusLambda).is_err());
        let hp = Hyperparameters {
            elitism: 101,
            ..Default::default()
        };
        assert!(hp.validate(g).is_err());
    }
}
