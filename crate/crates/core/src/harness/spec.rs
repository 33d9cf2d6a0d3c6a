//! Experiment definitions, config-file schema and problem/model resolution.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value as Json;

use crate::blackbox::{
    gen_boolean, gen_regression, BlackBoxProblem, BooleanFamily, Dataset, Metric,
    RegressionBenchmark, Sampling, TruthTable, DEFAULT_REGRESSION_EPSILON,
};
use crate::cgp::{CgpConfig, CgpModel};
use crate::error::{GpError, Result};
use crate::evolution::{Hyperparameters, Problem, Scheme};
use crate::policy::{EnvSpec, EpisodeConfig, PolicyProblem};
use crate::primitives::{Domain, FunctionSet};
use crate::tgp::{TreeConfig, TreeModel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Tgp,
    Cgp,
}

/// Representation and its parameters. Absent keys take documented defaults
/// when the experiment is resolved.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub name: ModelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub functions: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init_depth_min: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init_depth_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutation_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant_prob: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_columns: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_rows: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels_back: Option<usize>,
}

impl ModelSpec {
    pub fn new(name: ModelKind) -> Self {
        ModelSpec {
            name,
            functions: None,
            max_depth: None,
            init_depth_min: None,
            init_depth_max: None,
            mutation_depth: None,
            constants: None,
            constant_prob: None,
            n_columns: None,
            n_rows: None,
            levels_back: None,
        }
    }
}

/// Problem reference: a registry `name` or a file `path`, plus parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    /// Size parameter of Boolean families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Metric>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub episodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_steps: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub episode_seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_return: Option<f64>,
    /// Policy program outputs (defaults to what the action space needs).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outputs: Option<usize>,
}

impl ProblemSpec {
    pub fn named(name: &str) -> Self {
        ProblemSpec {
            name: Some(name.to_string()),
            ..Default::default()
        }
    }
}

/// Hyperparameters as written in a config file; absent keys take
/// model-dependent defaults.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct HyperparameterSpec {
    pub population_size: Option<usize>,
    pub max_evaluations: Option<u64>,
    pub mutation_rate: Option<f64>,
    pub crossover_rate: Option<f64>,
    pub tournament_size: Option<usize>,
    pub elitism: Option<usize>,
    pub mu: Option<usize>,
    pub lambda: Option<usize>,
    pub seed: Option<u64>,
}

impl HyperparameterSpec {
    /// Defaults: TGP uses mutation rate 0.1 as an operator probability, CGP
    /// uses 0.05 as a per-gene rate. Everything else follows `Hyperparameters::default()`.
    pub fn resolve(&self, model: ModelKind) -> Hyperparameters {
        let base = Hyperparameters {
            mutation_rate: match model {
                ModelKind::Tgp => 0.1,
                ModelKind::Cgp => 0.05,
            },
            ..Hyperparameters::default()
        };
        Hyperparameters {
            population_size: self.population_size.unwrap_or(base.population_size),
            max_evaluations: self.max_evaluations.unwrap_or(base.max_evaluations),
            mutation_rate: self.mutation_rate.unwrap_or(base.mutation_rate),
            crossover_rate: self.crossover_rate.unwrap_or(base.crossover_rate),
            tournament_size: self.tournament_size.unwrap_or(base.tournament_size),
            elitism: self.elitism.unwrap_or(base.elitism),
            mu: self.mu.unwrap_or(base.mu),
            lambda: self.lambda.unwrap_or(base.lambda),
            seed: self.seed.unwrap_or(base.seed),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub repetitions: Option<usize>,
    /// First run seed; defaults to `hyperparameters.seed`.
    pub base_seed: Option<u64>,
    pub scheme: Option<Scheme>,
    pub output: Option<String>,
    pub format: Option<ReportFormat>,
}

/// The JSON config document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub model: ModelSpec,
    pub problem: ProblemSpec,
    #[serde(default)]
    pub hyperparameters: HyperparameterSpec,
    #[serde(default)]
    pub run: RunSpec,
}

/// Sets `path` (dot separated) in a JSON document, creating objects as
/// needed. The value is parsed as JSON when possible, else taken as a string.
pub fn apply_override(doc: &mut Json, assignment: &str) -> Result<()> {
    let (path, raw) = assignment
        .split_once('=')
        .ok_or_else(|| GpError::config(format!("override `{assignment}` is not KEY=VALUE")))?;
    let value: Json = serde_json::from_str(raw).unwrap_or_else(|_| Json::String(raw.to_string()));
    let keys: Vec<&str> = path.split('.').collect();
    if keys.iter().any(|k| k.is_empty()) {
        return Err(GpError::config(format!("override key `{path}` has an empty segment")));
    }
    let mut node = doc;
    for key in &keys[..keys.len() - 1] {
        let obj = node
            .as_object_mut()
            .ok_or_else(|| GpError::config(format!("cannot descend into `{key}` of override `{path}`")))?;
        node = obj
            .entry(key.to_string())
            .or_insert_with(|| Json::Object(Default::default()));
    }
    let obj = node
        .as_object_mut()
        .ok_or_else(|| GpError::config(format!("override `{path}` does not address an object field")))?;
    obj.insert(keys[keys.len() - 1].to_string(), value);
    Ok(())
}

impl ConfigFile {
    /// Parses a config, applying `--set` style overrides before validation.
    pub fn parse(text: &str, overrides: &[String]) -> Result<Self> {
        let mut doc: Json = serde_json::from_str(text)?;
        for o in overrides {
            apply_override(&mut doc, o)?;
        }
        Ok(serde_json::from_value(doc)?)
    }

    pub fn load(path: &Path, overrides: &[String]) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, overrides)
    }

    pub fn experiment(&self) -> Result<ExperimentSpec> {
        let hyperparameters = self.hyperparameters.resolve(self.model.name);
        let scheme = self.run.scheme.unwrap_or(match self.model.name {
            ModelKind::Tgp => Scheme::Generational,
            ModelKind::Cgp => Scheme::OnePlusLambda,
        });
        let spec = ExperimentSpec {
            model: self.model.clone(),
            problem: self.problem.clone(),
            base_seed: self.run.base_seed.unwrap_or(hyperparameters.seed),
            hyperparameters,
            scheme,
            repetitions: self.run.repetitions.unwrap_or(1),
        };
        spec.resolve()
    }
}

/// A fully resolved experiment: what runs, how often, from which seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub model: ModelSpec,
    pub problem: ProblemSpec,
    pub hyperparameters: Hyperparameters,
    pub scheme: Scheme,
    pub repetitions: usize,
    pub base_seed: u64,
}

pub(crate) enum ProblemInstance {
    BlackBox(BlackBoxProblem<f64>),
    Policy(PolicyProblem),
}

impl ProblemInstance {
    pub fn domain(&self) -> Domain {
        match self {
            ProblemInstance::BlackBox(p) => p.domain(),
            ProblemInstance::Policy(p) => p.domain(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            ProblemInstance::BlackBox(p) => (p.n_inputs(), p.n_outputs()),
            ProblemInstance::Policy(p) => (p.n_inputs(), p.n_outputs()),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ProblemInstance::BlackBox(p) => p.name().to_string(),
            ProblemInstance::Policy(p) => p.name.clone(),
        }
    }
}

pub(crate) enum ModelInstance {
    Tree(TreeModel<f64>),
    Cgp(CgpModel),
}

/// Return of the best policy that walks straight to the goal, used as the
/// default gridworld target.
fn shortest_walk_return(goal: (usize, usize), gamma: f64) -> f64 {
    let moves = goal.0 + goal.1;
    -(1..=moves as i32).map(|t| gamma.powi(t)).sum::<f64>()
}

fn reject<T>(field: &str, value: &Option<T>, context: &str) -> Result<()> {
    if value.is_some() {
        return Err(GpError::config(format!("`{field}` does not apply to {context}")));
    }
    Ok(())
}

impl ProblemSpec {
    fn reject_blackbox_keys(&self, context: &str) -> Result<()> {
        reject("size", &self.size, context)?;
        reject("points", &self.points, context)?;
        reject("range", &self.range, context)?;
        reject("sample_seed", &self.sample_seed, context)?;
        reject("metric", &self.metric, context)?;
        reject("epsilon", &self.epsilon, context)
    }

    fn reject_policy_keys(&self, context: &str) -> Result<()> {
        reject("episodes", &self.episodes, context)?;
        reject("gamma", &self.gamma, context)?;
        reject("max_steps", &self.max_steps, context)?;
        reject("episode_seed", &self.episode_seed, context)?;
        reject("target_return", &self.target_return, context)?;
        reject("outputs", &self.outputs, context)
    }

    /// Fills in defaults; the result builds without further lookups.
    fn resolve(&self) -> Result<ProblemSpec> {
        let mut out = self.clone();
        match (&self.name, &self.path) {
            (Some(_), Some(_)) => {
                return Err(GpError::config("problem takes either `name` or `path`, not both"))
            }
            (None, None) => return Err(GpError::config("problem needs a `name` or a `path`")),
            (None, Some(path)) => {
                self.reject_policy_keys("file problems")?;
                reject("size", &self.size, "file problems")?;
                reject("points", &self.points, "file problems")?;
                reject("range", &self.range, "file problems")?;
                reject("sample_seed", &self.sample_seed, "file problems")?;
                if path.ends_with(".csv") {
                    out.metric = Some(self.metric.unwrap_or(Metric::Mse));
                    out.epsilon = Some(self.epsilon.unwrap_or(DEFAULT_REGRESSION_EPSILON));
                } else {
                    out.metric = Some(self.metric.unwrap_or(Metric::Hamming));
                    out.epsilon = Some(self.epsilon.unwrap_or(0.0));
                }
            }
            (Some(name), None) => {
                if let Some(family) = BooleanFamily::from_name(name) {
                    self.reject_policy_keys("logic synthesis")?;
                    reject("points", &self.points, "logic synthesis")?;
                    reject("range", &self.range, "logic synthesis")?;
                    reject("sample_seed", &self.sample_seed, "logic synthesis")?;
                    let size = self.size.ok_or_else(|| {
                        GpError::config(format!("`{}` needs a `size` parameter", family.name()))
                    })?;
                    gen_boolean(family, size)?;
                    out.metric = Some(self.metric.unwrap_or(Metric::Hamming));
                    out.epsilon = Some(self.epsilon.unwrap_or(0.0));
                } else if let Some(bench) = RegressionBenchmark::from_name(name) {
                    self.reject_policy_keys("symbolic regression")?;
                    reject("size", &self.size, "symbolic regression")?;
                    let (lo, hi) = bench.default_range();
                    out.points = Some(self.points.unwrap_or(20));
                    out.range = Some(self.range.unwrap_or([lo, hi]));
                    out.sample_seed = Some(self.sample_seed.unwrap_or(0));
                    out.metric = Some(self.metric.unwrap_or(Metric::Mse));
                    out.epsilon = Some(self.epsilon.unwrap_or(DEFAULT_REGRESSION_EPSILON));
                } else {
                    let env: EnvSpec = name.parse().map_err(|_| {
                        GpError::config(format!(
                            "unknown problem `{name}`; valid names: {}",
                            super::catalogue::problem_names().join(", ")
                        ))
                    })?;
                    self.reject_blackbox_keys("policy search")?;
                    let gamma = self.gamma.unwrap_or(1.0);
                    let (episodes, max_steps, target) = match env {
                        EnvSpec::CartPole => {
                            let steps = self.max_steps.unwrap_or(crate::policy::cartpole_constants::DEFAULT_MAX_STEPS);
                            let perfect: f64 = (1..=steps as i32).map(|t| gamma.powi(t)).sum();
                            (5, steps, perfect)
                        }
                        EnvSpec::GridWorld { width, height, goal } => {
                            (1, 2 * width * height, shortest_walk_return(goal, gamma))
                        }
                    };
                    out.episodes = Some(self.episodes.unwrap_or(episodes));
                    out.gamma = Some(gamma);
                    out.max_steps = Some(self.max_steps.unwrap_or(max_steps));
                    out.episode_seed = Some(self.episode_seed.unwrap_or(0));
                    out.target_return = Some(self.target_return.unwrap_or(target));
                }
            }
        }
        Ok(out)
    }

    pub(crate) fn build(&self) -> Result<ProblemInstance> {
        if let Some(path) = &self.path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| GpError::config(format!("cannot read problem file `{path}`: {e}")))?;
            let metric = self.metric.unwrap_or(Metric::Hamming);
            let epsilon = self.epsilon.unwrap_or(0.0);
            let payload = if path.ends_with(".csv") {
                crate::blackbox::Payload::Dataset(Dataset::from_csv(path.as_str(), &text)?)
            } else {
                crate::blackbox::Payload::TruthTable(TruthTable::from_text(path.as_str(), &text)?)
            };
            return Ok(ProblemInstance::BlackBox(BlackBoxProblem::new(payload, metric, epsilon)?));
        }
        let name = self.name.as_deref().unwrap_or_default();
        if let Some(family) = BooleanFamily::from_name(name) {
            let table = gen_boolean(family, self.size.unwrap_or(0))?;
            let metric = self.metric.unwrap_or(Metric::Hamming);
            let p = BlackBoxProblem::new(
                crate::blackbox::Payload::TruthTable(table),
                metric,
                self.epsilon.unwrap_or(0.0),
            )?;
            return Ok(ProblemInstance::BlackBox(p));
        }
        if let Some(bench) = RegressionBenchmark::from_name(name) {
            let sampling = Sampling {
                range: self.range.map(|[lo, hi]| (lo, hi)),
                count: self.points.unwrap_or(20),
                seed: self.sample_seed.unwrap_or(0),
            };
            let data = gen_regression::<f64>(bench, &sampling)?;
            let p = BlackBoxProblem::new(
                crate::blackbox::Payload::Dataset(data),
                self.metric.unwrap_or(Metric::Mse),
                self.epsilon.unwrap_or(DEFAULT_REGRESSION_EPSILON),
            )?;
            return Ok(ProblemInstance::BlackBox(p));
        }
        let env: EnvSpec = name.parse()?;
        let episodes = EpisodeConfig {
            episodes: self.episodes.unwrap_or(1),
            gamma: self.gamma.unwrap_or(1.0),
            max_steps: self.max_steps.unwrap_or(crate::policy::cartpole_constants::DEFAULT_MAX_STEPS),
            base_seed: self.episode_seed.unwrap_or(0),
        };
        let mut p = PolicyProblem::from_spec(&env, episodes, self.target_return)?;
        if let Some(n) = self.outputs {
            p = p.with_outputs(n)?;
        }
        Ok(ProblemInstance::Policy(p))
    }
}

impl ModelSpec {
    fn resolve(&self, domain: Domain) -> Result<ModelSpec> {
        let mut out = self.clone();
        let fset = match &self.functions {
            Some(names) => FunctionSet::from_names(domain, names)?,
            None => FunctionSet::default_for(domain),
        };
        out.functions = Some(fset.names().iter().map(|s| s.to_string()).collect());
        match self.name {
            ModelKind::Tgp => {
                reject("n_columns", &self.n_columns, "tgp")?;
                reject("n_rows", &self.n_rows, "tgp")?;
                reject("levels_back", &self.levels_back, "tgp")?;
                let d = TreeConfig::new(1, 1, domain);
                out.max_depth = Some(self.max_depth.unwrap_or(d.max_depth));
                out.init_depth_min = Some(self.init_depth_min.unwrap_or(d.init_depth_min));
                out.init_depth_max = Some(self.init_depth_max.unwrap_or(d.init_depth_max));
                out.mutation_depth = Some(self.mutation_depth.unwrap_or(d.mutation_depth));
                out.constants = Some(self.constants.unwrap_or(d.constants));
                out.constant_prob = Some(self.constant_prob.unwrap_or(d.constant_prob));
            }
            ModelKind::Cgp => {
                for (k, v) in [
                    ("max_depth", self.max_depth),
                    ("init_depth_min", self.init_depth_min),
                    ("init_depth_max", self.init_depth_max),
                    ("mutation_depth", self.mutation_depth),
                ] {
                    reject(k, &v, "cgp")?;
                }
                reject("constants", &self.constants, "cgp")?;
                reject("constant_prob", &self.constant_prob, "cgp")?;
                let columns = self.n_columns.unwrap_or(100);
                out.n_columns = Some(columns);
                out.n_rows = Some(self.n_rows.unwrap_or(1));
                out.levels_back = Some(self.levels_back.unwrap_or(columns));
            }
        }
        Ok(out)
    }

    pub(crate) fn build(&self, domain: Domain, n_inputs: usize, n_outputs: usize) -> Result<ModelInstance> {
        let fset = match &self.functions {
            Some(names) => FunctionSet::from_names(domain, names)?,
            None => FunctionSet::default_for(domain),
        };
        Ok(match self.name {
            ModelKind::Tgp => {
                let d = TreeConfig::new(n_inputs, n_outputs, domain);
                let cfg = TreeConfig {
                    max_depth: self.max_depth.unwrap_or(d.max_depth),
                    init_depth_min: self.init_depth_min.unwrap_or(d.init_depth_min),
                    init_depth_max: self.init_depth_max.unwrap_or(d.init_depth_max),
                    mutation_depth: self.mutation_depth.unwrap_or(d.mutation_depth),
                    constants: self.constants.unwrap_or(d.constants),
                    constant_prob: self.constant_prob.unwrap_or(d.constant_prob),
                    ..d
                };
                ModelInstance::Tree(TreeModel::new(fset, cfg)?)
            }
            ModelKind::Cgp => {
                let d = CgpConfig::new(n_inputs, n_outputs, &fset);
                let n_columns = self.n_columns.unwrap_or(d.n_columns);
                let cfg = CgpConfig {
                    n_columns,
                    n_rows: self.n_rows.unwrap_or(d.n_rows),
                    levels_back: self.levels_back.unwrap_or(n_columns),
                    ..d
                };
                ModelInstance::Cgp(CgpModel::new(fset, cfg)?)
            }
        })
    }
}

impl ExperimentSpec {
    /// Fills every default and checks that problem and model can be built.
    pub fn resolve(&self) -> Result<ExperimentSpec> {
        if self.repetitions == 0 {
            return Err(GpError::config("repetitions must be at least 1"));
        }
        self.hyperparameters.validate(self.scheme)?;
        let problem = self.problem.resolve()?;
        let instance = problem.build()?;
        let model = self.model.resolve(instance.domain())?;
        let (n_in, n_out) = instance.shape();
        model.build(instance.domain(), n_in, n_out)?;
        Ok(ExperimentSpec {
            model,
            problem,
            ..self.clone()
        })
    }

    pub(crate) fn instantiate(&self) -> Result<(ModelInstance, ProblemInstance)> {
        let problem = self.problem.build()?;
        let (n_in, n_out) = problem.shape();
        let model = self.model.build(problem.domain(), n_in, n_out)?;
        Ok((model, problem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_create_and_replace() {
        let mut doc: Json = serde_json::json!({"hyperparameters": {"seed": 1}});
        apply_override(&mut doc, "hyperparameters.seed=7").unwrap();
        apply_override(&mut doc, "run.format=csv").unwrap();
        apply_override(&mut doc, "model.functions=[\"and\",\"or\"]").unwrap();
        assert_eq!(doc["hyperparameters"]["seed"], 7);
        assert_eq!(doc["run"]["format"], "csv");
        assert_eq!(doc["model"]["functions"][1], "or");
        assert!(apply_override(&mut doc, "noequals").is_err());
        assert!(apply_override(&mut doc, "run..x=1").is_err());
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"model": {"name": "cgp", "colums": 10}, "problem": {"name": "parity", "size": 3}}"#;
        let err = ConfigFile::parse(text, &[]).unwrap_err();
        assert!(err.to_string().contains("colums"), "{err}");
        let text = r#"{"model": {"name": "cgp"}, "problem": {"name": "parity", "size": 3}, "extra": 1}"#;
        assert!(ConfigFile::parse(text, &[]).is_err());
    }

    #[test]
    fn syntax_errors_report_line() {
        let text = "{\n\"model\": {\"name\": \"cgp\"},\n\"problem\": {\"name\": \"parity\" \"size\": 3}\n}";
        let err = ConfigFile::parse(text, &[]).unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
    }

    #[test]
    fn defaults_fill_absent_keys_only() {
        let text = r#"{"model": {"name": "cgp", "n_columns": 30}, "problem": {"name": "parity", "size": 3},
                       "hyperparameters": {"lambda": 8}}"#;
        let spec = ConfigFile::parse(text, &[]).unwrap().experiment().unwrap();
        assert_eq!(spec.model.n_columns, Some(30));
        assert_eq!(spec.model.levels_back, Some(30));
        assert_eq!(spec.hyperparameters.lambda, 8);
        assert_eq!(spec.hyperparameters.mutation_rate, 0.05);
        assert_eq!(spec.scheme, Scheme::OnePlusLambda);
        assert_eq!(
            spec.model.functions.as_deref(),
            Some(&["and", "or", "nand", "nor"].map(String::from)[..])
        );
    }

    #[test]
    fn misplaced_parameters_rejected() {
        let tgp_cols = r#"{"model": {"name": "tgp", "n_columns": 3}, "problem": {"name": "koza1"}}"#;
        assert!(ConfigFile::parse(tgp_cols, &[]).unwrap().experiment().is_err());
        let sr_size = r#"{"model": {"name": "tgp"}, "problem": {"name": "koza1", "size": 3}}"#;
        assert!(ConfigFile::parse(sr_size, &[]).unwrap().experiment().is_err());
        let no_size = r#"{"model": {"name": "cgp"}, "problem": {"name": "parity"}}"#;
        assert!(ConfigFile::parse(no_size, &[]).unwrap().experiment().is_err());
    }

    #[test]
    fn unknown_problem_lists_valid_names() {
        let text = r#"{"model": {"name": "tgp"}, "problem": {"name": "nosuch"}}"#;
        let err = ConfigFile::parse(text, &[]).unwrap().experiment().unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("parity") && msg.contains("koza1") && msg.contains("cartpole"), "{msg}");
    }

    #[test]
    fn gridworld_default_target() {
        assert_eq!(shortest_walk_return((4, 4), 1.0), -8.0);
        let spec = ExperimentSpec {
            model: ModelSpec::new(ModelKind::Tgp),
            problem: ProblemSpec::named("gridworld:5x5:4,4"),
            hyperparameters: Hyperparameters::default(),
            scheme: Scheme::Generational,
            repetitions: 1,
            base_seed: 0,
        }
        .resolve()
        .unwrap();
        assert_eq!(spec.problem.target_return, Some(-8.0));
        assert_eq!(spec.problem.episodes, Some(1));
        assert_eq!(spec.problem.max_steps, Some(50));
    }
}
