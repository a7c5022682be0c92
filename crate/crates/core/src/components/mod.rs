//! Building blocks shared by the optimizers.
//!
//! Every stochastic operation draws from the run's algorithm stream and every
//! fitness value comes through a [`FitnessGateway`], so steps can stop early
//! with [`BudgetExhausted`] at any evaluation. Personal and global bests are
//! only ever replaced by better values, and a sub-population's gbest is
//! refreshed before an operation returns, including when it stops early.

mod de;
mod diversity;
mod exclusion;
mod pso;
mod shift;

pub use de::{binomial_crossover, de_step, mutant, DeParams, DeStrategy};
pub use diversity::{brownian_step, quantum_step, sample_in_ball};
pub use exclusion::{
    anti_convergence, exclusion, exclusion_losers, exclusion_radius, is_converged, worst_subpop,
};
pub use pso::{constriction_factor, pso_step, PsoParams};
pub use shift::ShiftEstimator;

use crate::error::BudgetExhausted;
use crate::evaluation::FitnessGateway;
use crate::population::{Individual, SubPopulation};

/// Evaluate a member's current position and update its personal best.
pub fn evaluate_member(
    member: &mut Individual,
    gateway: &mut dyn FitnessGateway,
) -> Result<f64, BudgetExhausted> {
    let value = gateway.evaluate(&member.position)?;
    member.observe(value);
    Ok(value)
}

/// Evaluate the members at `indices` in order, then refresh gbest whether or
/// not the budget ran out midway.
pub(crate) fn evaluate_members(
    subpop: &mut SubPopulation,
    indices: &[usize],
    gateway: &mut dyn FitnessGateway,
) -> Result<(), BudgetExhausted> {
    let mut outcome = Ok(());
    for &i in indices {
        if let Err(e) = evaluate_member(&mut subpop.members[i], gateway) {
            outcome = Err(e);
            break;
        }
    }
    subpop.refresh_gbest();
    outcome
}
