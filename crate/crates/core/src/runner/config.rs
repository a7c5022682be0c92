use std::path::PathBuf;

use serde::Serialize;

use crate::edoas::{EdoaConfig, Registry};
use crate::error::ConfigError;
use crate::problem::ProblemSpec;

/// Everything needed to reproduce an experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub algorithm: String,
    pub problem: ProblemSpec,
    pub edoa: EdoaConfig,
    pub run_count: usize,
    pub experiment_seed: u64,
    pub emit_error_series: bool,
    /// Education mode: a single run on a freshly seeded instance, with
    /// per-iteration frames and landscape grids. Two-dimensional only.
    pub emit_frames: bool,
    pub grid_resolution: usize,
    /// Benchmark seed for education mode; drawn at random when `None`.
    pub education_seed: Option<u64>,
    #[serde(skip)]
    pub output_dir: Option<PathBuf>,
    /// Pins the timestamp used in output file names.
    #[serde(skip)]
    pub timestamp: Option<String>,
    #[serde(skip)]
    pub progress: bool,
    /// Keep every run's raw fitness log in the outcome.
    #[serde(skip)]
    pub retain_logs: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::new("mQSO")
    }
}

impl ExperimentConfig {
    pub fn new(algorithm: &str) -> Self {
        let edoa = EdoaConfig::for_algorithm(algorithm);
        Self {
            algorithm: edoa.algorithm.clone(),
            problem: ProblemSpec::default(),
            edoa,
            run_count: 31,
            experiment_seed: 0,
            emit_error_series: false,
            emit_frames: false,
            grid_resolution: 100,
            education_seed: None,
            output_dir: None,
            timestamp: None,
            progress: false,
            retain_logs: false,
        }
    }

    /// Route a `KEY=VALUE` override to the problem or the algorithm.
    pub fn apply_param(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        if self.problem.set_param(key, value)? || self.edoa.set_param(key, value)? {
            Ok(())
        } else {
            Err(ConfigError::new(format!("unknown parameter '{key}'")))
        }
    }

    pub fn validate(&self, registry: &Registry) -> Result<(), ConfigError> {
        registry.resolve(&self.algorithm)?;
        self.problem.validate()?;
        self.edoa.validate()?;
        if self.run_count == 0 {
            return Err(ConfigError::new("run count must be at least 1"));
        }
        if self.emit_frames && self.problem.dimension != 2 {
            return Err(ConfigError::new("education mode requires dimension 2"));
        }
        if self.emit_frames && self.grid_resolution < 2 {
            return Err(ConfigError::new("grid resolution must be at least 2"));
        }
        Ok(())
    }

    /// Runs actually executed: education mode always performs one.
    pub fn effective_runs(&self) -> usize {
        if self.emit_frames {
            1
        } else {
            self.run_count
        }
    }
}
