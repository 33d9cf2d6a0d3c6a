//! Black-box supervised problems: regression datasets and truth tables.

mod dataset;
mod generators;
mod truth_table;

pub use dataset::{Dataset, Sample};
pub use generators::{gen_boolean, gen_regression, BooleanFamily, RegressionBenchmark, Sampling};
pub use truth_table::{load_truth_table, save_truth_table, TruthTable, MAX_TABLE_INPUTS};

use serde::{Deserialize, Serialize};

use crate::error::{GpError, Result};
use crate::evolution::{Problem, Program};
use crate::primitives::Domain;
use crate::rng::GpRng;
use crate::scalar::{Scalar, Word};

/// Substitute for non-finite program outputs in regression fitness.
pub const NON_FINITE_PENALTY: f64 = 1e15;

/// Default success threshold for regression costs.
pub const DEFAULT_REGRESSION_EPSILON: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Mse,
    Mae,
    Hamming,
}

impl Metric {
    pub fn domain(self) -> Domain {
        match self {
            Metric::Mse | Metric::Mae => Domain::Real,
            Metric::Hamming => Domain::Boolean,
        }
    }
}

fn check_shape<P: Program>(p: &P, n_inputs: usize, n_outputs: usize) -> Result<()> {
    if p.n_inputs() != n_inputs || p.n_outputs() != n_outputs {
        return Err(GpError::config(format!(
            "program shape {}→{} does not match data shape {n_inputs}→{n_outputs}",
            p.n_inputs(),
            p.n_outputs()
        )));
    }
    Ok(())
}

fn regression_cost<T: Scalar, P: Program>(p: &P, d: &Dataset<T>, metric: Metric) -> f64 {
    let penalty = T::from_f64_lossy(NON_FINITE_PENALTY);
    let mut total = 0.0f64;
    for row in d.rows() {
        let out = p.evaluate::<T>(&row.x);
        for (o, y) in out.into_iter().zip(&row.y) {
            let o = if o.is_finite() { o } else { penalty };
            let err = (o - *y).to_f64_lossy().abs();
            total += match metric {
                Metric::Mae => err,
                _ => err * err,
            };
        }
    }
    let cost = total / (d.len() * d.n_outputs()) as f64;
    if cost.is_finite() {
        cost
    } else {
        f64::MAX
    }
}

/// Mean squared or absolute error over all rows and outputs.
pub fn fitness_regression<T: Scalar, P: Program>(p: &P, d: &Dataset<T>, metric: Metric) -> Result<f64> {
    check_shape(p, d.n_inputs(), d.n_outputs())?;
    if metric == Metric::Hamming {
        return Err(GpError::config("Hamming distance is not a regression metric"));
    }
    Ok(regression_cost(p, d, metric))
}

fn logic_cost<P: Program>(p: &P, t: &TruthTable) -> u64 {
    let mut inputs = vec![Word(0); t.n_inputs()];
    let mut cost = 0u64;
    for w in 0..t.n_words() {
        for (i, slot) in inputs.iter_mut().enumerate() {
            *slot = Word(t.input_word(i, w));
        }
        let mask = t.row_mask(w);
        let out = p.evaluate(&inputs);
        for (j, o) in out.iter().enumerate() {
            cost += u64::from(((o.0 ^ t.output_words(j)[w]) & mask).count_ones());
        }
    }
    cost
}

/// Hamming distance between the program and the table, evaluated 64 rows at
/// a time over packed input columns.
pub fn fitness_logic<P: Program>(p: &P, t: &TruthTable) -> Result<u64> {
    if t.n_inputs() > MAX_TABLE_INPUTS {
        return Err(GpError::SizeLimit {
            what: t.name.clone(),
            requested: t.n_inputs(),
            limit: MAX_TABLE_INPUTS,
        });
    }
    check_shape(p, t.n_inputs(), t.n_outputs())?;
    Ok(logic_cost(p, t))
}

#[derive(Clone, Debug, PartialEq)]
pub enum Payload<T> {
    Dataset(Dataset<T>),
    TruthTable(TruthTable),
}

/// Input-output supervision plus the metric and success threshold.
#[derive(Clone, Debug)]
pub struct BlackBoxProblem<T> {
    payload: Payload<T>,
    metric: Metric,
    ideal_epsilon: f64,
}

impl<T: Scalar> BlackBoxProblem<T> {
    pub fn new(payload: Payload<T>, metric: Metric, ideal_epsilon: f64) -> Result<Self> {
        let domain = match &payload {
            Payload::Dataset(_) => Domain::Real,
            Payload::TruthTable(_) => Domain::Boolean,
        };
        if metric.domain() != domain {
            return Err(GpError::config(format!(
                "metric {metric:?} cannot score a {domain:?} problem"
            )));
        }
        if ideal_epsilon.is_nan() || ideal_epsilon < 0.0 {
            return Err(GpError::config("ideal epsilon must be non-negative"));
        }
        Ok(BlackBoxProblem {
            payload,
            metric,
            ideal_epsilon,
        })
    }

    pub fn regression(d: Dataset<T>, metric: Metric) -> Result<Self> {
        Self::new(Payload::Dataset(d), metric, DEFAULT_REGRESSION_EPSILON)
    }

    /// Exact-match logic synthesis (threshold 0).
    pub fn logic(t: TruthTable) -> Self {
        Self::new(Payload::TruthTable(t), Metric::Hamming, 0.0).expect("valid pairing")
    }

    pub fn payload(&self) -> &Payload<T> {
        &self.payload
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn name(&self) -> &str {
        match &self.payload {
            Payload::Dataset(d) => &d.name,
            Payload::TruthTable(t) => &t.name,
        }
    }
}

impl<T: Scalar> Problem for BlackBoxProblem<T> {
    fn domain(&self) -> Domain {
        self.metric.domain()
    }

    fn n_inputs(&self) -> usize {
        match &self.payload {
            Payload::Dataset(d) => d.n_inputs(),
            Payload::TruthTable(t) => t.n_inputs(),
        }
    }

    fn n_outputs(&self) -> usize {
        match &self.payload {
            Payload::Dataset(d) => d.n_outputs(),
            Payload::TruthTable(t) => t.n_outputs(),
        }
    }

    fn cost<P: Program>(&self, program: &P, _rng: &mut GpRng) -> f64 {
        match &self.payload {
            Payload::Dataset(d) => regression_cost(program, d, self.metric),
            Payload::TruthTable(t) => logic_cost(program, t) as f64,
        }
    }

    fn ideal_threshold(&self) -> Option<f64> {
        Some(self.ideal_epsilon)
    }
}
