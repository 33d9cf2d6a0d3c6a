//! Seeded repetitions on a bounded worker pool.

use std::time::Instant;

use rayon::prelude::*;

use super::report::{Aggregates, BenchmarkReport, RunResult};
use super::spec::{ExperimentSpec, ModelInstance, ProblemInstance};
use crate::error::{GpError, Result};
use crate::evolution::{evolve, GpModel, Hyperparameters, Problem, Scheme};

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "CROSSGP_WORKERS";

fn run_one<M: GpModel, P: Problem>(model: &M, problem: &P, hp: &Hyperparameters, scheme: Scheme) -> Result<RunResult> {
    let start = Instant::now();
    let out = evolve(model, problem, hp, scheme)?;
    let best_cost = out.best_cost();
    Ok(RunResult {
        seed: hp.seed,
        best_cost,
        success: out.success,
        evaluations_used: out.evaluations_used,
        evaluations_to_success: out.evaluations_to_success,
        best_expression: model.describe(&out.best.genome),
        trajectory: out.trajectory,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn dispatch(model: &ModelInstance, problem: &ProblemInstance, hp: &Hyperparameters, scheme: Scheme) -> Result<RunResult> {
    match (model, problem) {
        (ModelInstance::Tree(m), ProblemInstance::BlackBox(p)) => run_one(m, p, hp, scheme),
        (ModelInstance::Tree(m), ProblemInstance::Policy(p)) => run_one(m, p, hp, scheme),
        (ModelInstance::Cgp(m), ProblemInstance::BlackBox(p)) => run_one(m, p, hp, scheme),
        (ModelInstance::Cgp(m), ProblemInstance::Policy(p)) => run_one(m, p, hp, scheme),
    }
}

fn model_label(model: &ModelInstance) -> String {
    match model {
        ModelInstance::Tree(m) => m.model_name().to_string(),
        ModelInstance::Cgp(m) => m.model_name().to_string(),
    }
}

/// Seed of run `r`.
pub fn run_seed(spec: &ExperimentSpec, r: usize) -> u64 {
    spec.base_seed.wrapping_add(r as u64)
}

/// Executes one run with an explicit seed (used by single-run commands).
pub fn run_single(spec: &ExperimentSpec, workers: Option<usize>) -> Result<(BenchmarkReport, RunResult)> {
    let spec = ExperimentSpec {
        repetitions: 1,
        base_seed: spec.hyperparameters.seed,
        ..spec.clone()
    };
    let report = run_experiment(&spec, workers)?;
    let run = report.runs[0].clone();
    Ok((report, run))
}

/// Runs every repetition, `workers` threads at most (all evaluation
/// parallelism included). `None` reads the environment, else uses all cores.
pub fn run_experiment(spec: &ExperimentSpec, workers: Option<usize>) -> Result<BenchmarkReport> {
    let spec = spec.resolve()?;
    let (model, problem) = spec.instantiate()?;
    let workers = match workers {
        Some(n) => n,
        None => match std::env::var(WORKERS_ENV) {
            Ok(v) => v
                .parse()
                .map_err(|_| GpError::config(format!("{WORKERS_ENV}=`{v}` is not a worker count")))?,
            Err(_) => 0,
        },
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| GpError::Internal(e.to_string()))?;
    let runs: Vec<RunResult> = pool.install(|| {
        (0..spec.repetitions)
            .into_par_iter()
            .map(|r| {
                let hp = Hyperparameters {
                    seed: run_seed(&spec, r),
                    ..spec.hyperparameters.clone()
                };
                dispatch(&model, &problem, &hp, spec.scheme)
            })
            .collect::<Result<_>>()
    })?;
    let mut runs = runs;
    runs.sort_by_key(|r| r.seed);
    Ok(BenchmarkReport {
        model_label: model_label(&model),
        problem_label: problem.label(),
        aggregates: Aggregates::from_runs(&runs),
        spec,
        runs,
    })
}
