use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use super::{run_experiment, write_outputs, ExperimentConfig, RunnerError};
use crate::edoas::Registry;
use crate::error::ConfigError;
use crate::problem::BenchmarkKind;

#[derive(Debug, Parser)]
#[command(
    name = "dynlab",
    version,
    about = "Dynamic optimization benchmarks and algorithms",
    args_conflicts_with_subcommands = true
)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the registered algorithms and benchmarks.
    List,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value = "mQSO")]
    algorithm: String,
    #[arg(long, default_value = "GMPB")]
    benchmark: String,
    #[arg(long, default_value_t = 5)]
    dimension: usize,
    #[arg(long, default_value_t = 10)]
    peaks: usize,
    #[arg(long, default_value_t = 5000)]
    change_frequency: usize,
    #[arg(long, default_value_t = 1.0)]
    shift_severity: f64,
    #[arg(long, default_value_t = 100)]
    environments: usize,
    #[arg(long, default_value_t = 31)]
    runs: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "results")]
    output_dir: PathBuf,
    /// Also write the averaged offline-error and current-error series.
    #[arg(long)]
    emit_error_series: bool,
    /// Education mode: one run on a fresh 2-D instance with frame dumps.
    #[arg(long)]
    emit_frames: bool,
    #[arg(long, default_value_t = 100)]
    grid_resolution: usize,
    /// Benchmark or algorithm override, e.g. `height-severity=5`.
    #[arg(long = "param", value_name = "KEY=VALUE")]
    params: Vec<String>,
    /// Fixed timestamp for output file names.
    #[arg(long)]
    timestamp: Option<String>,
    /// Benchmark seed for education mode instead of a random one.
    #[arg(long)]
    education_seed: Option<u64>,
    /// Suppress progress messages.
    #[arg(long, short)]
    quiet: bool,
}

#[derive(Debug)]
pub enum Invocation {
    List,
    Run(Box<ExperimentConfig>),
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

impl RunArgs {
    fn into_config(self) -> Result<ExperimentConfig, ConfigError> {
        let registry = Registry::builtin();
        let algorithm = registry.resolve(&self.algorithm)?.to_string();
        let mut config = ExperimentConfig::new(&algorithm);
        let p = &mut config.problem;
        p.benchmark = self.benchmark.parse::<BenchmarkKind>()?;
        p.dimension = self.dimension;
        p.peak_count = self.peaks;
        p.change_frequency = self.change_frequency;
        p.shift_severity = self.shift_severity;
        p.environment_count = self.environments;
        config.run_count = self.runs;
        config.experiment_seed = self.seed;
        config.output_dir = Some(self.output_dir);
        config.emit_error_series = self.emit_error_series;
        config.emit_frames = self.emit_frames;
        config.grid_resolution = self.grid_resolution;
        config.timestamp = self.timestamp;
        config.education_seed = self.education_seed;
        config.progress = !self.quiet;
        for param in &self.params {
            let (key, value) = param
                .split_once('=')
                .ok_or_else(|| ConfigError::new(format!("expected KEY=VALUE, got '{param}'")))?;
            config.apply_param(key.trim(), value.trim())?;
        }
        config.validate(&registry)?;
        Ok(config)
    }
}

/// Parse arguments (program name first) into a validated invocation.
pub fn parse_invocation<I, T>(argv: I) -> Result<Invocation, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    match cli.command {
        Some(Command::List) => Ok(Invocation::List),
        None => Ok(Invocation::Run(Box::new(cli.run.into_config()?))),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match parse_invocation(argv) {
        Ok(Invocation::List) => {
            print_list();
            return 0;
        }
        Ok(Invocation::Run(config)) => config,
        Err(CliError::Usage(e)) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
        Err(CliError::Config(e)) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match execute(&config) {
        Ok(()) => 0,
        Err(RunnerError::Config(e)) => {
            eprintln!("error: {e}");
            2
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn print_list() {
    println!("algorithms:");
    for name in Registry::builtin().names() {
        println!("  {name}");
    }
    println!("benchmarks:");
    for kind in BenchmarkKind::ALL {
        println!("  {kind}");
    }
}

fn execute(config: &ExperimentConfig) -> Result<(), RunnerError> {
    let outcome = run_experiment(config)?;
    let files = write_outputs(&outcome)?;
    let s = &outcome.summary;
    println!(
        "{} on {}: {} run(s)",
        config.edoa.algorithm,
        config.problem.benchmark,
        s.runs.len()
    );
    for (label, st) in [("offline error", s.offline_error), ("E_BBC", s.e_bbc)] {
        println!(
            "{label}: mean {} median {} standard error {}",
            st.mean, st.median, st.standard_error
        );
    }
    for path in files.all() {
        println!("wrote {}", path.display());
    }
    Ok(())
}
