//! Experiment execution and benchmark reports.

pub mod catalogue;
pub mod report;
pub mod runner;
pub mod spec;

pub use catalogue::{catalogue, list_catalogue, problem_names, CatalogueEntry, DOMAINS};
pub use report::{
    aggregate_line, median, read_report_csv, read_report_json, write_report, Aggregates, BenchmarkReport, CsvRow,
    RunResult,
};
pub use runner::{run_experiment, run_seed, run_single, WORKERS_ENV};
pub use spec::{
    apply_override, ConfigFile, ExperimentSpec, HyperparameterSpec, ModelKind, ModelSpec, ProblemSpec, ReportFormat,
    RunSpec,
};
