use serde::{Deserialize, Serialize};

use super::ledger::{peek_fitness, EvaluationLedger};
use crate::benchmarks::EnvironmentState;
use crate::population::SubPopulation;

/// Snapshot of the population after one iteration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EducationFrame {
    pub env: usize,
    pub iter: usize,
    pub fe: usize,
    pub positions: Vec<Vec<f64>>,
    pub current_error: f64,
}

/// Dense fitness grid of one environment, sampled without spending budget.
///
/// `values` is row-major: row `i` holds the points whose second coordinate
/// is the `i`-th grid coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LandscapeSnapshot {
    pub env: usize,
    pub resolution: usize,
    pub lo: f64,
    pub hi: f64,
    pub values: Vec<f64>,
    pub visible_centers: Vec<Vec<f64>>,
    pub optimum_position: Vec<f64>,
}

impl LandscapeSnapshot {
    pub fn sample(state: &EnvironmentState, resolution: usize, lo: f64, hi: f64) -> Self {
        let coords = grid_coordinates(resolution, lo, hi);
        let mut values = Vec::with_capacity(resolution * resolution);
        for &y in &coords {
            for &x in &coords {
                values.push(peek_fitness(&[x, y], state));
            }
        }
        let visible_centers = (0..state.peak_count())
            .filter(|&k| state.is_visible(k))
            .map(|k| state.centers[k].clone())
            .collect();
        Self {
            env: state.env_index,
            resolution,
            lo,
            hi,
            values,
            visible_centers,
            optimum_position: state.optimum_position.clone(),
        }
    }
}

pub fn grid_coordinates(resolution: usize, lo: f64, hi: f64) -> Vec<f64> {
    if resolution <= 1 {
        return vec![lo; resolution];
    }
    let step = (hi - lo) / (resolution - 1) as f64;
    (0..resolution)
        .map(|i| {
            if i + 1 == resolution {
                hi
            } else {
                lo + step * i as f64
            }
        })
        .collect()
}

/// Collects per-iteration frames and one landscape grid per environment for
/// two-dimensional problems.
#[derive(Debug, Clone, PartialEq)]
pub struct EducationRecorder {
    pub enabled: bool,
    pub grid_resolution: usize,
    pub frames: Vec<EducationFrame>,
    pub snapshots: Vec<LandscapeSnapshot>,
}

impl Default for EducationRecorder {
    fn default() -> Self {
        Self::new(false, 100)
    }
}

impl EducationRecorder {
    pub fn new(enabled: bool, grid_resolution: usize) -> Self {
        Self {
            enabled,
            grid_resolution,
            frames: Vec::new(),
            snapshots: Vec::new(),
        }
    }

    fn active(&self, ledger: &EvaluationLedger) -> bool {
        self.enabled && ledger.sequence().spec.dimension == 2
    }

    pub fn record_frame(
        &mut self,
        ledger: &EvaluationLedger,
        iteration: usize,
        subpops: &[SubPopulation],
    ) {
        if !self.active(ledger) {
            return;
        }
        self.snapshot_up_to(ledger, ledger.current_env());
        let positions = subpops
            .iter()
            .flat_map(|sp| sp.positions().map(<[f64]>::to_vec))
            .collect();
        self.frames.push(EducationFrame {
            env: ledger.current_env(),
            iter: iteration,
            fe: ledger.fe_counter(),
            positions,
            current_error: ledger.current_error(),
        });
    }

    /// Make sure every environment of the run has its grid, including ones
    /// that ended without a frame.
    pub fn finish(&mut self, ledger: &EvaluationLedger) {
        if self.active(ledger) {
            self.snapshot_up_to(ledger, ledger.sequence().len());
        }
    }

    fn snapshot_up_to(&mut self, ledger: &EvaluationLedger, env: usize) {
        let seq = ledger.sequence();
        let bounds = seq.spec.bounds();
        let next = self.snapshots.last().map_or(1, |s| s.env + 1);
        for t in next..=env {
            self.snapshots.push(LandscapeSnapshot::sample(
                seq.state(t),
                self.grid_resolution,
                bounds.lo,
                bounds.hi,
            ));
        }
    }
}
