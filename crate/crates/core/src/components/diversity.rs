use rand::Rng;

use super::evaluate_members;
use crate::bounds::{absorb_bounds, Bounds};
use crate::error::BudgetExhausted;
use crate::evaluation::FitnessGateway;
use crate::population::{Role, SubPopulation};
use crate::random::{gaussian, unit_random_vector};

/// Uniform point in the ball of radius `radius` around `center`.
pub fn sample_in_ball<R: Rng + ?Sized>(center: &[f64], radius: f64, rng: &mut R) -> Vec<f64> {
    let d = center.len();
    let direction = unit_random_vector(rng, d);
    let r = radius * rng.random::<f64>().powf(1.0 / d as f64);
    center
        .iter()
        .zip(direction)
        .map(|(c, u)| c + r * u)
        .collect()
}

/// Resample every quantum member uniformly in the cloud of radius `r_cloud`
/// around the gbest held at entry.
pub fn quantum_step<R: Rng + ?Sized>(
    subpop: &mut SubPopulation,
    r_cloud: f64,
    bounds: Bounds,
    rng: &mut R,
    gateway: &mut dyn FitnessGateway,
) -> Result<(), BudgetExhausted> {
    let center = subpop.gbest_position.clone();
    resample(
        subpop,
        Role::Quantum,
        bounds,
        gateway,
        |rng_| sample_in_ball(&center, r_cloud, rng_),
        rng,
    )
}

/// Resample every Brownian member at gbest plus `N(0, sigma^2)` noise per
/// coordinate.
pub fn brownian_step<R: Rng + ?Sized>(
    subpop: &mut SubPopulation,
    sigma: f64,
    bounds: Bounds,
    rng: &mut R,
    gateway: &mut dyn FitnessGateway,
) -> Result<(), BudgetExhausted> {
    let center = subpop.gbest_position.clone();
    resample(
        subpop,
        Role::Brownian,
        bounds,
        gateway,
        |rng_| center.iter().map(|c| c + sigma * gaussian(rng_)).collect(),
        rng,
    )
}

fn resample<R: Rng + ?Sized>(
    subpop: &mut SubPopulation,
    role: Role,
    bounds: Bounds,
    gateway: &mut dyn FitnessGateway,
    mut draw: impl FnMut(&mut R) -> Vec<f64>,
    rng: &mut R,
) -> Result<(), BudgetExhausted> {
    let mut moved = Vec::new();
    for (i, m) in subpop.members.iter_mut().enumerate() {
        if m.role != role {
            continue;
        }
        m.position = draw(rng);
        m.velocity.iter_mut().for_each(|v| *v = 0.0);
        absorb_bounds(&mut m.position, &mut m.velocity, bounds);
        moved.push(i);
    }
    evaluate_members(subpop, &moved, gateway)
}
