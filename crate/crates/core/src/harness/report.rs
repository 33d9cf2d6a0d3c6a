//! Per-run records, aggregates and their JSON/CSV forms.

use std::io::Write as _;

use serde::{Deserialize, Serialize};

use super::spec::{ExperimentSpec, ReportFormat};
use crate::error::{GpError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunResult {
    pub seed: u64,
    pub best_cost: f64,
    pub success: bool,
    pub evaluations_used: u64,
    pub evaluations_to_success: Option<u64>,
    pub best_expression: String,
    /// (generation, population best cost) after each generation.
    pub trajectory: Vec<(u64, f64)>,
    /// Not reproducible.
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Aggregates {
    pub success_rate: f64,
    pub median_best_cost: f64,
    /// Over successful runs only.
    pub median_evaluations_to_success: Option<f64>,
    /// Not reproducible.
    pub mean_wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkReport {
    pub spec: ExperimentSpec,
    pub model_label: String,
    pub problem_label: String,
    pub runs: Vec<RunResult>,
    pub aggregates: Aggregates,
}

/// Median with the two middle values averaged for even counts.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 { v[n / 2] } else { f64::midpoint(v[n / 2 - 1], v[n / 2]) })
}

impl Aggregates {
    pub fn from_runs(runs: &[RunResult]) -> Self {
        let n = runs.len();
        let successes = runs.iter().filter(|r| r.success).count();
        let costs: Vec<f64> = runs.iter().map(|r| r.best_cost).collect();
        let to_success: Vec<f64> = runs
            .iter()
            .filter(|r| r.success)
            .filter_map(|r| r.evaluations_to_success.map(|e| e as f64))
            .collect();
        Aggregates {
            success_rate: if n == 0 { 0.0 } else { successes as f64 / n as f64 },
            median_best_cost: median(&costs).unwrap_or(f64::NAN),
            median_evaluations_to_success: median(&to_success),
            mean_wall_ms: if n == 0 { 0.0 } else { runs.iter().map(|r| r.wall_ms).sum::<f64>() / n as f64 },
        }
    }
}

impl BenchmarkReport {
    /// Copy with all wall-time fields zeroed, for reproducibility checks.
    pub fn without_wall_time(&self) -> Self {
        let mut r = self.clone();
        for run in &mut r.runs {
            run.wall_ms = 0.0;
        }
        r.aggregates.mean_wall_ms = 0.0;
        r
    }
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| "none".to_string(), |x| x.to_string())
}

pub fn aggregate_line(r: &BenchmarkReport) -> String {
    let a = &r.aggregates;
    format!(
        "success_rate={} median_best_cost={} median_evaluations_to_success={} mean_wall_ms={:.3}",
        a.success_rate,
        a.median_best_cost,
        opt(a.median_evaluations_to_success),
        a.mean_wall_ms
    )
}

pub const CSV_HEADER: [&str; 5] = ["seed", "best_cost", "success", "evaluations", "wall_ms"];

pub fn write_report(r: &BenchmarkReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(r)?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER)?;
            for run in &r.runs {
                w.write_record([
                    run.seed.to_string(),
                    run.best_cost.to_string(),
                    run.success.to_string(),
                    run.evaluations_used.to_string(),
                    run.wall_ms.to_string(),
                ])?;
            }
            let mut bytes = w.into_inner().map_err(|e| GpError::Internal(e.to_string()))?;
            writeln!(bytes, "# aggregate: {}", aggregate_line(r))?;
            String::from_utf8(bytes).map_err(|e| GpError::Internal(e.to_string()))
        }
    }
}

pub fn read_report_json(text: &str) -> Result<BenchmarkReport> {
    Ok(serde_json::from_str(text)?)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CsvRow {
    pub seed: u64,
    pub best_cost: f64,
    pub success: bool,
    pub evaluations: u64,
    pub wall_ms: f64,
}

/// Parses the data rows of a CSV report, skipping the trailer.
pub fn read_report_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = rd.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(GpError::parse(1, format!("unexpected header `{}`", header.iter().collect::<Vec<_>>().join(","))));
    }
    let mut out = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let field = |k: usize| rec.get(k).unwrap_or_default();
        let bad = |what: &str| GpError::parse(line, format!("bad {what}"));
        out.push(CsvRow {
            seed: field(0).parse().map_err(|_| bad("seed"))?,
            best_cost: field(1).parse().map_err(|_| bad("best_cost"))?,
            success: field(2).parse().map_err(|_| bad("success"))?,
            evaluations: field(3).parse().map_err(|_| bad("evaluations"))?,
            wall_ms: field(4).parse().map_err(|_| bad("wall_ms"))?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::{Hyperparameters, Scheme};
    use crate::harness::spec::{ModelKind, ModelSpec, ProblemSpec};

    pub(crate) fn run(seed: u64, cost: f64, success: bool) -> RunResult {
        RunResult {
            seed,
            best_cost: cost,
            success,
            evaluations_used: 100 + seed,
            evaluations_to_success: success.then_some(50 + seed),
            best_expression: "(and x0 x1)".into(),
            trajectory: vec![],
            wall_ms: 1.5,
        }
    }

    fn report(runs: Vec<RunResult>) -> BenchmarkReport {
        BenchmarkReport {
            spec: ExperimentSpec {
                model: ModelSpec::new(ModelKind::Cgp),
                problem: ProblemSpec::named("parity"),
                hyperparameters: Hyperparameters::default(),
                scheme: Scheme::OnePlusLambda,
                repetitions: runs.len(),
                base_seed: 0,
            },
            model_label: "cgp".into(),
            problem_label: "parity3".into(),
            aggregates: Aggregates::from_runs(&runs),
            runs,
        }
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[8.0, 0.0, 2.0]), Some(2.0));
        assert_eq!(median(&[1.0, 4.0]), Some(2.5));
        assert_eq!(median(&[]), None);
        assert_eq!(median(&[f64::MAX, f64::MAX]), Some(f64::MAX));
    }

    #[test]
    fn all_failed_rate_zero() {
        let r = report(vec![run(0, 1.0, false), run(1, 2.0, false), run(2, 3.0, false)]);
        assert_eq!(r.aggregates.success_rate, 0.0);
        assert_eq!(r.aggregates.median_evaluations_to_success, None);
        assert_eq!(r.aggregates.median_best_cost, 2.0);
    }

    #[test]
    fn csv_row_counts() {
        let r = report(vec![run(0, 0.0, true), run(1, 2.0, false), run(2, 8.0, false)]);
        let text = write_report(&r, ReportFormat::Csv).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[0], "seed,best_cost,success,evaluations,wall_ms");
        assert!(lines[4].starts_with("# aggregate: success_rate="));
        let rows = read_report_csv(&text).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2].best_cost, 8.0);
    }

    #[test]
    fn json_round_trip_empty_trajectory() {
        let r = report(vec![run(3, 0.25, true)]);
        let text = write_report(&r, ReportFormat::Json).unwrap();
        assert_eq!(read_report_json(&text).unwrap(), r);
    }
}
