use rand::Rng;

use super::rotation::{givens_rotation, random_plane_order};
use super::state::{EnvironmentSequence, EnvironmentState};
use crate::error::ConfigError;
use crate::problem::{BenchmarkKind, ProblemSpec};
use crate::random::{gaussian, unit_random_vector};

/// Mirror `value` off whichever bound it crossed, repeatedly, until it lies
/// in `[lo, hi]`. Closed form of the repeated reflection: fold onto a period
/// of `2 (hi - lo)`.
pub fn reflect_into_range(value: f64, lo: f64, hi: f64) -> f64 {
    if value >= lo && value <= hi {
        return value;
    }
    let width = hi - lo;
    if width <= 0.0 {
        return lo;
    }
    let t = (value - lo).rem_euclid(2.0 * width);
    let folded = if t > width { 2.0 * width - t } else { t };
    (lo + folded).clamp(lo, hi)
}

fn uniform<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + rng.random::<f64>() * (hi - lo)
}

fn walk<R: Rng + ?Sized>(rng: &mut R, value: f64, severity: f64, lo: f64, hi: f64) -> f64 {
    reflect_into_range(value + severity * gaussian(rng), lo, hi)
}

/// First environment: every attribute uniform in its range, centers uniform
/// in the search box.
pub fn initial_state<R: Rng + ?Sized>(spec: &ProblemSpec, rng: &mut R) -> EnvironmentState {
    let d = spec.dimension;
    let m = spec.peak_count;
    let bounds = spec.bounds();
    let gmpb = spec.benchmark == BenchmarkKind::Gmpb;
    let width_len = if gmpb { d } else { 1 };

    let mut state = EnvironmentState {
        benchmark: spec.benchmark,
        env_index: 1,
        centers: Vec::with_capacity(m),
        heights: Vec::with_capacity(m),
        widths: Vec::with_capacity(m),
        taus: Vec::new(),
        etas: Vec::new(),
        angles: Vec::new(),
        rotation_planes: Vec::new(),
        rotations: Vec::new(),
        optimum_value: f64::NEG_INFINITY,
        optimum_position: Vec::new(),
    };
    for _ in 0..m {
        state.centers.push(bounds.sample(rng, d));
        state
            .heights
            .push(uniform(rng, spec.min_height, spec.max_height));
        state.widths.push(
            (0..width_len)
                .map(|_| uniform(rng, spec.min_width, spec.max_width))
                .collect(),
        );
        if gmpb {
            state.taus.push(uniform(rng, spec.min_tau, spec.max_tau));
            let mut eta = [0.0; 4];
            eta.iter_mut()
                .for_each(|e| *e = uniform(rng, spec.min_eta, spec.max_eta));
            state.etas.push(eta);
            let angle = uniform(rng, spec.min_angle, spec.max_angle);
            state.angles.push(angle);
            let planes = random_plane_order(d, rng);
            state.rotations.push(givens_rotation(angle, &planes));
            state.rotation_planes.push(planes);
        }
    }
    state.refresh_optimum();
    state
}

/// Next environment. Each peak's center moves `shift_severity` along a fresh
/// random direction; every other attribute takes a Gaussian step scaled by
/// its severity. Out-of-range results are reflected back.
pub fn apply_dynamics<R: Rng + ?Sized>(
    state: &EnvironmentState,
    spec: &ProblemSpec,
    rng: &mut R,
) -> EnvironmentState {
    let d = spec.dimension;
    let (lo, hi) = (spec.min_coordinate, spec.max_coordinate);
    let mut next = state.clone();
    next.env_index = state.env_index + 1;

    for k in 0..state.peak_count() {
        let direction = unit_random_vector(rng, d);
        for (c, u) in next.centers[k].iter_mut().zip(&direction) {
            *c = reflect_into_range(*c + spec.shift_severity * u, lo, hi);
        }
        next.heights[k] = walk(
            rng,
            next.heights[k],
            spec.height_severity,
            spec.min_height,
            spec.max_height,
        );
        for w in next.widths[k].iter_mut() {
            *w = walk(rng, *w, spec.width_severity, spec.min_width, spec.max_width);
        }
        if spec.benchmark == BenchmarkKind::Gmpb {
            next.taus[k] = walk(
                rng,
                next.taus[k],
                spec.tau_severity,
                spec.min_tau,
                spec.max_tau,
            );
            for e in next.etas[k].iter_mut() {
                *e = walk(rng, *e, spec.eta_severity, spec.min_eta, spec.max_eta);
            }
            next.angles[k] = walk(
                rng,
                next.angles[k],
                spec.angle_severity,
                spec.min_angle,
                spec.max_angle,
            );
            next.rotations[k] = givens_rotation(next.angles[k], &next.rotation_planes[k]);
        }
    }
    next.refresh_optimum();
    next
}

/// All `environment_count` environments of `spec`, drawn from `rng`.
pub fn generate_sequence<R: Rng + ?Sized>(
    spec: &ProblemSpec,
    rng: &mut R,
) -> Result<EnvironmentSequence, ConfigError> {
    spec.validate()?;
    let mut states = Vec::with_capacity(spec.environment_count);
    states.push(initial_state(spec, rng));
    for _ in 1..spec.environment_count {
        let next = apply_dynamics(states.last().expect("non-empty"), spec, rng);
        states.push(next);
    }
    Ok(EnvironmentSequence {
        spec: spec.clone(),
        states,
    })
}
