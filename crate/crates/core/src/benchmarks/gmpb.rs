use super::EnvironmentState;

/// Irregularity transform applied per coordinate of a peak's local frame.
///
/// Positive and negative half-axes use their own pair of `eta` frequencies,
/// which is what makes GMPB peaks asymmetric.
pub fn gmpb_transform(y: f64, tau: f64, eta: &[f64; 4]) -> f64 {
    if y > 0.0 {
        let l = y.ln();
        (l + tau * ((eta[0] * l).sin() + (eta[1] * l).sin())).exp()
    } else if y < 0.0 {
        let l = (-y).ln();
        -(l + tau * ((eta[2] * l).sin() + (eta[3] * l).sin())).exp()
    } else {
        0.0
    }
}

/// Value of peak `k` at `x`: `h_k - sqrt(sum_j w_kj^2 T(y_j)^2)` with
/// `y = R_k (x - c_k)`.
pub fn gmpb_peak_value(x: &[f64], state: &EnvironmentState, k: usize) -> f64 {
    let center = &state.centers[k];
    let rotation = &state.rotations[k];
    let widths = &state.widths[k];
    let tau = state.taus[k];
    let eta = &state.etas[k];
    let mut sum = 0.0;
    for (row, w) in rotation.iter().zip(widths) {
        let y: f64 = row
            .iter()
            .zip(x.iter().zip(center))
            .map(|(r, (xi, ci))| r * (xi - ci))
            .sum();
        let t = w * gmpb_transform(y, tau, eta);
        sum += t * t;
    }
    state.heights[k] - sum.sqrt()
}

pub fn gmpb_fitness(x: &[f64], state: &EnvironmentState) -> f64 {
    (0..state.peak_count())
        .map(|k| gmpb_peak_value(x, state, k))
        .fold(f64::NEG_INFINITY, f64::max)
}
