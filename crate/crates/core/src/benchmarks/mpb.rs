use super::EnvironmentState;
use crate::random::distance;

/// Cone of peak `k`: `h_k - w_k * |x - c_k|`.
pub fn mpb_peak_value(x: &[f64], state: &EnvironmentState, k: usize) -> f64 {
    state.heights[k] - state.widths[k][0] * distance(x, &state.centers[k])
}

pub fn mpb_fitness(x: &[f64], state: &EnvironmentState) -> f64 {
    (0..state.peak_count())
        .map(|k| mpb_peak_value(x, state, k))
        .fold(f64::NEG_INFINITY, f64::max)
}
