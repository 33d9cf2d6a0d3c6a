use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use crossgp::harness::{
    aggregate_line, list_catalogue, run_experiment, run_single, write_report, BenchmarkReport, ConfigFile,
    ExperimentSpec, ReportFormat, WORKERS_ENV,
};

/// Run and benchmark genetic programming experiments.
#[derive(Parser)]
#[command(name = "crossgp", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List registered problems and their parameters.
    List {
        /// logic_synthesis, symbolic_regression or policy_search.
        #[arg(long)]
        domain: Option<String>,
    },
    /// Single run; exits 1 if no ideal solution was found.
    Run(RunArgs),
    /// All configured repetitions with aggregate statistics.
    Bench(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    /// Override a config value, e.g. `hyperparameters.seed=7`.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, env = WORKERS_ENV)]
    workers: Option<usize>,
    /// Print the per-generation best cost.
    #[arg(short, long)]
    verbose: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Csv => ReportFormat::Csv,
        }
    }
}

struct Plan {
    spec: ExperimentSpec,
    output: Option<PathBuf>,
    format: ReportFormat,
}

fn plan(args: &RunArgs) -> anyhow::Result<Plan> {
    let cfg = ConfigFile::load(&args.config, &args.overrides)
        .with_context(|| format!("invalid config `{}`", args.config.display()))?;
    let spec = cfg
        .experiment()
        .with_context(|| format!("invalid config `{}`", args.config.display()))?;
    Ok(Plan {
        spec,
        output: args.output.clone().or(cfg.run.output.map(PathBuf::from)),
        format: args.format.map(Into::into).or(cfg.run.format).unwrap_or(ReportFormat::Json),
    })
}

fn save(report: &BenchmarkReport, path: &Path, format: ReportFormat) -> anyhow::Result<()> {
    let text = write_report(report, format)?;
    std::fs::write(path, text).with_context(|| format!("cannot write report `{}`", path.display()))
}

fn print_trajectory(report: &BenchmarkReport) {
    for run in &report.runs {
        for (g, c) in &run.trajectory {
            println!("seed {} generation {g} best {c}", run.seed);
        }
    }
}

fn cmd_run(args: &RunArgs) -> anyhow::Result<ExitCode> {
    let p = plan(args)?;
    let (report, run) = run_single(&p.spec, args.workers)?;
    if args.verbose {
        print_trajectory(&report);
    }
    println!("best: {}", run.best_expression);
    println!("cost: {}", run.best_cost);
    println!("success: {} evaluations: {}", run.success, run.evaluations_used);
    if let Some(path) = &p.output {
        save(&report, path, p.format)?;
    }
    Ok(if run.success { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_bench(args: &RunArgs) -> anyhow::Result<ExitCode> {
    let p = plan(args)?;
    let report = run_experiment(&p.spec, args.workers)?;
    if args.verbose {
        print_trajectory(&report);
    }
    match &p.output {
        Some(path) => save(&report, path, p.format)?,
        None => print!("{}", write_report(&report, p.format)?),
    }
    println!("aggregate: {}", aggregate_line(&report));
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::List { domain } => list_catalogue(domain.as_deref())
            .map(|text| {
                print!("{text}");
                ExitCode::SUCCESS
            })
            .map_err(Into::into),
        Command::Run(args) => cmd_run(args),
        Command::Bench(args) => cmd_bench(args),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        ExitCode::from(2)
    })
}
