use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::rotation::Matrix;
use super::{gmpb_fitness, gmpb_peak_value, mpb_fitness, mpb_peak_value};
use crate::problem::{BenchmarkKind, ProblemSpec};

/// Peak parameters of one stationary environment.
///
/// `widths[k]` holds one entry per dimension for GMPB and a single scalar
/// for MPB. `taus`, `etas`, `angles`, `rotation_planes` and `rotations` are
/// empty for MPB. Each peak keeps the axis order of its rotation planes for
/// the whole run, so the rotation only changes through its angle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentState {
    pub benchmark: BenchmarkKind,
    /// 1-based.
    pub env_index: usize,
    pub centers: Vec<Vec<f64>>,
    pub heights: Vec<f64>,
    pub widths: Vec<Vec<f64>>,
    pub taus: Vec<f64>,
    pub etas: Vec<[f64; 4]>,
    pub angles: Vec<f64>,
    pub rotation_planes: Vec<Vec<usize>>,
    pub rotations: Vec<Matrix>,
    pub optimum_value: f64,
    pub optimum_position: Vec<f64>,
}

impl EnvironmentState {
    pub fn peak_count(&self) -> usize {
        self.heights.len()
    }

    pub fn dimension(&self) -> usize {
        self.centers.first().map_or(0, Vec::len)
    }

    /// Baseline function of this environment.
    pub fn fitness(&self, x: &[f64]) -> f64 {
        match self.benchmark {
            BenchmarkKind::Mpb => mpb_fitness(x, self),
            BenchmarkKind::Gmpb => gmpb_fitness(x, self),
        }
    }

    pub fn peak_value(&self, x: &[f64], k: usize) -> f64 {
        match self.benchmark {
            BenchmarkKind::Mpb => mpb_peak_value(x, self, k),
            BenchmarkKind::Gmpb => gmpb_peak_value(x, self, k),
        }
    }

    /// A peak is visible when no other peak dominates it at its own center.
    pub fn is_visible(&self, k: usize) -> bool {
        let c = &self.centers[k];
        let own = self.peak_value(c, k);
        (0..self.peak_count()).all(|j| j == k || self.peak_value(c, j) <= own)
    }

    pub(crate) fn refresh_optimum(&mut self) {
        let (value, position) = optimum_of(self);
        self.optimum_value = value;
        self.optimum_position = position;
    }
}

/// Global optimum: the tallest peak's height at its center. Ties go to the
/// lowest peak index.
pub fn optimum_of(state: &EnvironmentState) -> (f64, Vec<f64>) {
    let mut best = 0;
    for (k, &h) in state.heights.iter().enumerate() {
        if h > state.heights[best] {
            best = k;
        }
    }
    (state.heights[best], state.centers[best].clone())
}

/// All environments of one problem instance, generated up-front.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentSequence {
    pub spec: ProblemSpec,
    pub states: Vec<EnvironmentState>,
}

impl EnvironmentSequence {
    /// State of environment `t` (1-based).
    pub fn state(&self, t: usize) -> &EnvironmentState {
        &self.states[t - 1]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("environment sequence serializes")
    }

    /// SHA-256 of the JSON serialization, hex encoded.
    pub fn fingerprint(&self) -> String {
        Sha256::digest(self.to_json().as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
