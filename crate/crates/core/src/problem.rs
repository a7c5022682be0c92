use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bounds::Bounds;
use crate::error::ConfigError;

/// Baseline landscape family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BenchmarkKind {
    /// Moving peaks with conical peaks and a scalar width per peak.
    #[serde(rename = "MPB")]
    Mpb,
    /// Generalized moving peaks: rotated, irregular, ill-conditioned peaks.
    #[serde(rename = "GMPB")]
    Gmpb,
}

impl BenchmarkKind {
    pub const ALL: [BenchmarkKind; 2] = [BenchmarkKind::Mpb, BenchmarkKind::Gmpb];

    pub fn name(self) -> &'static str {
        match self {
            BenchmarkKind::Mpb => "MPB",
            BenchmarkKind::Gmpb => "GMPB",
        }
    }
}

impl fmt::Display for BenchmarkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BenchmarkKind {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                ConfigError::new(format!(
                    "unknown benchmark '{s}'; valid benchmarks: MPB, GMPB"
                ))
            })
    }
}

/// Static description of a dynamic problem instance.
///
/// Defaults are the commonly suggested settings: GMPB in 5 dimensions with
/// 10 peaks, 5000 evaluations per environment, shift severity 1 and 100
/// environments, plus the standard attribute ranges and severities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    pub benchmark: BenchmarkKind,
    pub dimension: usize,
    pub peak_count: usize,
    /// Fitness evaluations per environment.
    pub change_frequency: usize,
    pub shift_severity: f64,
    pub environment_count: usize,
    pub min_coordinate: f64,
    pub max_coordinate: f64,
    pub height_severity: f64,
    pub width_severity: f64,
    pub tau_severity: f64,
    pub eta_severity: f64,
    pub angle_severity: f64,
    pub min_height: f64,
    pub max_height: f64,
    pub min_width: f64,
    pub max_width: f64,
    pub min_tau: f64,
    pub max_tau: f64,
    pub min_eta: f64,
    pub max_eta: f64,
    pub min_angle: f64,
    pub max_angle: f64,
}

impl Default for ProblemSpec {
    fn default() -> Self {
        Self {
            benchmark: BenchmarkKind::Gmpb,
            dimension: 5,
            peak_count: 10,
            change_frequency: 5000,
            shift_severity: 1.0,
            environment_count: 100,
            min_coordinate: -50.0,
            max_coordinate: 50.0,
            height_severity: 7.0,
            width_severity: 1.0,
            tau_severity: 0.05,
            eta_severity: 2.0,
            angle_severity: PI / 9.0,
            min_height: 30.0,
            max_height: 70.0,
            min_width: 1.0,
            max_width: 12.0,
            min_tau: 0.0,
            max_tau: 0.4,
            min_eta: 10.0,
            max_eta: 25.0,
            min_angle: -PI,
            max_angle: PI,
        }
    }
}

impl ProblemSpec {
    pub fn bounds(&self) -> Bounds {
        Bounds::new(self.min_coordinate, self.max_coordinate)
    }

    /// Total evaluation budget of one run.
    pub fn fe_max(&self) -> usize {
        self.change_frequency * self.environment_count
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("dimension", self.dimension),
            ("peak_count", self.peak_count),
            ("change_frequency", self.change_frequency),
            ("environment_count", self.environment_count),
        ];
        for (name, v) in positive {
            if v == 0 {
                return Err(ConfigError::new(format!("{name} must be at least 1")));
            }
        }
        if !self.min_coordinate.is_finite()
            || !self.max_coordinate.is_finite()
            || self.min_coordinate >= self.max_coordinate
        {
            return Err(ConfigError::new(
                "min_coordinate must be below max_coordinate",
            ));
        }
        let ranges = [
            ("height", self.min_height, self.max_height),
            ("width", self.min_width, self.max_width),
            ("tau", self.min_tau, self.max_tau),
            ("eta", self.min_eta, self.max_eta),
            ("angle", self.min_angle, self.max_angle),
        ];
        for (name, lo, hi) in ranges {
            if !lo.is_finite() || !hi.is_finite() || lo > hi {
                return Err(ConfigError::new(format!(
                    "min_{name} must not exceed max_{name}"
                )));
            }
        }
        if self.min_tau < 0.0 {
            return Err(ConfigError::new("min_tau must be non-negative"));
        }
        let severities = [
            ("shift_severity", self.shift_severity),
            ("height_severity", self.height_severity),
            ("width_severity", self.width_severity),
            ("tau_severity", self.tau_severity),
            ("eta_severity", self.eta_severity),
            ("angle_severity", self.angle_severity),
        ];
        for (name, v) in severities {
            if !(v.is_finite() && v >= 0.0) {
                return Err(ConfigError::new(format!("{name} must be non-negative")));
            }
        }
        Ok(())
    }

    /// Set one field by its command-line style name (`height-severity`,
    /// `min_width`, ...). Returns `Ok(false)` when the key is not a problem
    /// field so callers can try other targets.
    pub fn set_param(&mut self, key: &str, value: &str) -> Result<bool, ConfigError> {
        let key = key.to_ascii_lowercase().replace('-', "_");
        let parse_f = |v: &str| {
            v.parse::<f64>()
                .map_err(|_| ConfigError::new(format!("parameter {key}: '{v}' is not a number")))
        };
        let parse_u = |v: &str| {
            v.parse::<usize>().map_err(|_| {
                ConfigError::new(format!(
                    "parameter {key}: '{v}' is not a non-negative integer"
                ))
            })
        };
        match key.as_str() {
            "benchmark" => self.benchmark = value.parse()?,
            "dimension" => self.dimension = parse_u(value)?,
            "peaks" | "peak_count" | "peak_number" => self.peak_count = parse_u(value)?,
            "change_frequency" => self.change_frequency = parse_u(value)?,
            "environments" | "environment_count" | "environment_number" => {
                self.environment_count = parse_u(value)?
            }
            "shift_severity" => self.shift_severity = parse_f(value)?,
            "min_coordinate" => self.min_coordinate = parse_f(value)?,
            "max_coordinate" => self.max_coordinate = parse_f(value)?,
            "height_severity" => self.height_severity = parse_f(value)?,
            "width_severity" => self.width_severity = parse_f(value)?,
            "tau_severity" => self.tau_severity = parse_f(value)?,
            "eta_severity" => self.eta_severity = parse_f(value)?,
            "angle_severity" => self.angle_severity = parse_f(value)?,
            "min_height" => self.min_height = parse_f(value)?,
            "max_height" => self.max_height = parse_f(value)?,
            "min_width" => self.min_width = parse_f(value)?,
            "max_width" => self.max_width = parse_f(value)?,
            "min_tau" => self.min_tau = parse_f(value)?,
            "max_tau" => self.max_tau = parse_f(value)?,
            "min_eta" => self.min_eta = parse_f(value)?,
            "max_eta" => self.max_eta = parse_f(value)?,
            "min_angle" => self.min_angle = parse_f(value)?,
            "max_angle" => self.max_angle = parse_f(value)?,
            _ => return Ok(false),
        }
        Ok(true)
    }
}
