use rand::Rng;
use serde::{Deserialize, Serialize};

use super::evaluate_members;
use crate::bounds::{absorb_bounds, Bounds};
use crate::error::BudgetExhausted;
use crate::evaluation::FitnessGateway;
use crate::population::{Role, SubPopulation};

/// `chi = 2 / |2 - phi - sqrt(phi^2 - 4 phi)|` with `phi = c1 + c2 > 4`.
pub fn constriction_factor(c1: f64, c2: f64) -> f64 {
    let phi = c1 + c2;
    assert!(phi > 4.0, "constriction needs c1 + c2 > 4");
    2.0 / (2.0 - phi - (phi * phi - 4.0 * phi).sqrt()).abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PsoParams {
    pub chi: f64,
    pub c1: f64,
    pub c2: f64,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            chi: 0.729843788,
            c1: 2.05,
            c2: 2.05,
        }
    }
}

impl PsoParams {
    pub fn with_acceleration(c1: f64, c2: f64) -> Self {
        Self {
            chi: constriction_factor(c1, c2),
            c1,
            c2,
        }
    }
}

/// One constriction-PSO move of every neutral member.
///
/// All velocities are computed against the gbest held at entry, then the
/// moved members are evaluated in order.
pub fn pso_step<R: Rng + ?Sized>(
    subpop: &mut SubPopulation,
    params: &PsoParams,
    bounds: Bounds,
    rng: &mut R,
    gateway: &mut dyn FitnessGateway,
) -> Result<(), BudgetExhausted> {
    let gbest = subpop.gbest_position.clone();
    let mut moved = Vec::with_capacity(subpop.members.len());
    for (i, m) in subpop.members.iter_mut().enumerate() {
        if m.role != Role::Neutral {
            continue;
        }
        for (j, &g) in gbest.iter().enumerate() {
            let r1: f64 = rng.random();
            let r2: f64 = rng.random();
            let x = m.position[j];
            m.velocity[j] = params.chi
                * (m.velocity[j]
                    + params.c1 * r1 * (m.pbest_position[j] - x)
                    + params.c2 * r2 * (g - x));
            m.position[j] = x + m.velocity[j];
        }
        absorb_bounds(&mut m.position, &mut m.velocity, bounds);
        moved.push(i);
    }
    evaluate_members(subpop, &moved, gateway)
}
