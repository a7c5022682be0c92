use serde::{Deserialize, Serialize};

/// Online estimate of how far optima move per change: the mean distance
/// tracked sub-populations' bests relocated between consecutive changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftEstimator {
    pub initial: f64,
    pub observations: Vec<f64>,
}

impl Default for ShiftEstimator {
    fn default() -> Self {
        Self::new(1.0)
    }
}

impl ShiftEstimator {
    pub fn new(initial: f64) -> Self {
        Self {
            initial,
            observations: Vec::new(),
        }
    }

    pub fn estimate(&self) -> f64 {
        if self.observations.is_empty() {
            self.initial
        } else {
            self.observations.iter().sum::<f64>() / self.observations.len() as f64
        }
    }

    pub fn update(&mut self, relocations: &[f64]) -> f64 {
        debug_assert!(relocations.iter().all(|&d| d >= 0.0));
        self.observations.extend_from_slice(relocations);
        self.estimate()
    }
}
