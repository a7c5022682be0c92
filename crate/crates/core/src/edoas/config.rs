use serde::{Deserialize, Serialize};

use crate::components::{DeParams, DeStrategy, PsoParams};
use crate::error::ConfigError;

/// Algorithm parameters. [`EdoaConfig::for_algorithm`] gives the usual
/// settings from each algorithm's original description; any field can be
/// overridden afterwards.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdoaConfig {
    pub algorithm: String,
    /// Number of sub-populations (initial count for AmQSO).
    pub subpop_count: usize,
    /// Members per sub-population.
    pub subpop_size: usize,
    pub quantum_count: usize,
    pub brownian_count: usize,
    /// Share of RPSO particles re-randomized after a change.
    pub restart_fraction: f64,
    /// Free swarms AmQSO tolerates before removing one.
    pub n_excess: usize,
    pub pso: PsoParams,
    pub de: DeParams,
    /// Brownian perturbation scale between changes.
    pub brownian_sigma: f64,
    /// Shift estimate used before any relocation has been observed.
    pub initial_shift_estimate: f64,
}

impl EdoaConfig {
    fn base(algorithm: &str) -> Self {
        Self {
            algorithm: algorithm.to_string(),
            subpop_count: 1,
            subpop_size: 10,
            quantum_count: 0,
            brownian_count: 0,
            restart_fraction: 0.0,
            n_excess: 0,
            pso: PsoParams::default(),
            de: DeParams::default(),
            brownian_sigma: 0.2,
            initial_shift_estimate: 1.0,
        }
    }

    /// Defaults for the built-in algorithms; unknown names get a generic
    /// single-population configuration for plug-ins.
    pub fn for_algorithm(name: &str) -> Self {
        let lower = name.to_ascii_lowercase();
        match lower.as_str() {
            "rpso" => Self {
                subpop_size: 50,
                restart_fraction: 0.5,
                ..Self::base("RPSO")
            },
            "mqso" => Self {
                subpop_count: 10,
                quantum_count: 5,
                ..Self::base("mQSO")
            },
            "amqso" => Self {
                quantum_count: 5,
                n_excess: 3,
                ..Self::base("AmQSO")
            },
            "dynde" => Self {
                subpop_count: 10,
                subpop_size: 6,
                brownian_count: 2,
                de: DeParams {
                    strategy: DeStrategy::Best2Bin,
                    ..DeParams::default()
                },
                ..Self::base("DynDE")
            },
            _ => Self::base(name),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.subpop_count == 0 || self.subpop_size == 0 {
            return Err(ConfigError::new(
                "subpop_count and subpop_size must be positive",
            ));
        }
        if !(0.0..=1.0).contains(&self.restart_fraction) {
            return Err(ConfigError::new("restart_fraction must lie in [0, 1]"));
        }
        if self.brownian_sigma.is_nan() || self.brownian_sigma <= 0.0 {
            return Err(ConfigError::new("brownian_sigma must be positive"));
        }
        if self.initial_shift_estimate.is_nan() || self.initial_shift_estimate < 0.0 {
            return Err(ConfigError::new(
                "initial_shift_estimate must be non-negative",
            ));
        }
        if self.pso.chi.is_nan() || self.pso.chi <= 0.0 {
            return Err(ConfigError::new("chi must be positive"));
        }
        self.de.validate()
    }

    /// Set one field from a `KEY=VALUE` override. Returns `Ok(false)` for
    /// keys that are not algorithm parameters.
    pub fn set_param(&mut self, key: &str, value: &str) -> Result<bool, ConfigError> {
        let key = key.to_ascii_lowercase().replace('-', "_");
        let float = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| ConfigError::new(format!("parameter {key}: '{v}' is not a number")))
        };
        let count = |v: &str| {
            v.parse::<usize>().map_err(|_| {
                ConfigError::new(format!(
                    "parameter {key}: '{v}' is not a non-negative integer"
                ))
            })
        };
        match key.as_str() {
            "subpop_count" | "swarm_count" | "population_count" => {
                self.subpop_count = count(value)?
            }
            "subpop_size" | "swarm_size" | "population_size" => self.subpop_size = count(value)?,
            "quantum_count" | "quantum" => self.quantum_count = count(value)?,
            "brownian_count" | "brownian" => self.brownian_count = count(value)?,
            "restart_fraction" => self.restart_fraction = float(value)?,
            "n_excess" => self.n_excess = count(value)?,
            "chi" => self.pso.chi = float(value)?,
            "c1" => self.pso.c1 = float(value)?,
            "c2" => self.pso.c2 = float(value)?,
            "f" | "de_f" => self.de.f = float(value)?,
            "cr" | "de_cr" => self.de.cr = float(value)?,
            "strategy" | "de_strategy" => self.de.strategy = DeStrategy::parse(value)?,
            "sigma" | "brownian_sigma" => self.brownian_sigma = float(value)?,
            "initial_shift_estimate" | "initial_shift" => {
                self.initial_shift_estimate = float(value)?
            }
            _ => return Ok(false),
        }
        Ok(true)
    }
}
