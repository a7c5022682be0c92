//! Experiment orchestration: one environment sequence per experiment, a
//! number of independent seeded runs, indicators, result files and the
//! command line front end.

mod cli;
mod config;
mod experiment;
mod output;

pub use cli::{cli_main, parse_invocation, CliError, Invocation};
pub use config::ExperimentConfig;
pub use experiment::{
    drive, execute_run, generate_for, run_experiment, run_experiment_with, ExperimentOutcome,
    RunRecord,
};
pub use output::{format_grid, write_outputs, OutputFiles};

use std::path::PathBuf;

use thiserror::Error;

use crate::error::ConfigError;

#[derive(Debug, Error)]
pub enum RunnerError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("algorithm {0} finished an iteration without evaluating anything")]
    Stalled(String),
}

impl RunnerError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        RunnerError::Io {
            path: path.into(),
            source,
        }
    }
}
