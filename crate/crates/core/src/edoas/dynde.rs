use super::state::{reinitialize, AlgorithmState, Layout};
use super::{Edoa, EdoaConfig, EdoaError};
use crate::components::{brownian_step, de_step, exclusion, exclusion_radius, DeParams};
use crate::error::{BudgetExhausted, ConfigError};
use crate::evaluation::FitnessGateway;
use crate::random::Stream;

/// Fixed set of DE populations, each with Brownian members around its best,
/// kept apart by exclusion.
#[derive(Debug, Clone)]
pub struct DynDe {
    de: DeParams,
    sigma: f64,
    r_excl: f64,
    state: AlgorithmState,
}

impl DynDe {
    pub fn new(
        config: &EdoaConfig,
        problem: &mut dyn FitnessGateway,
        rng: Stream,
    ) -> Result<Self, EdoaError> {
        config.validate()?;
        if config.subpop_size < DeParams::MIN_POPULATION {
            return Err(ConfigError::new(format!(
                "DE populations need at least {} members",
                DeParams::MIN_POPULATION
            ))
            .into());
        }
        if config.brownian_count >= config.subpop_size {
            return Err(
                ConfigError::new("brownian_count must leave at least one DE member").into(),
            );
        }
        if config.quantum_count != 0 {
            return Err(ConfigError::new("DynDE has no quantum members").into());
        }
        let layout = Layout {
            neutral: 0,
            quantum: 0,
            brownian: config.brownian_count,
            plain: config.subpop_size - config.brownian_count,
        };
        let mut alg = Self {
            de: config.de,
            sigma: config.brownian_sigma,
            r_excl: exclusion_radius(problem.bounds(), config.subpop_count, problem.dimension()),
            state: AlgorithmState::new(rng, config.initial_shift_estimate),
        };
        for _ in 0..config.subpop_count {
            alg.state.spawn(layout, problem)?;
        }
        Ok(alg)
    }
}

impl Edoa for DynDe {
    fn name(&self) -> &str {
        "DynDE"
    }

    fn state(&self) -> &AlgorithmState {
        &self.state
    }

    fn state_mut(&mut self) -> &mut AlgorithmState {
        &mut self.state
    }

    fn iterate(&mut self, problem: &mut dyn FitnessGateway) -> Result<(), BudgetExhausted> {
        self.state.iteration += 1;
        let bounds = problem.bounds();
        let AlgorithmState { subpops, rng, .. } = &mut self.state;
        for sp in subpops.iter_mut() {
            de_step(sp, &self.de, bounds, rng, problem)?;
            brownian_step(sp, self.sigma, bounds, rng, problem)?;
        }
        exclusion(subpops, self.r_excl, |sp| reinitialize(sp, rng, problem))?;
        Ok(())
    }

    /// Memories are refreshed, then Brownian members are scattered around
    /// each best with the estimated shift severity as spread.
    fn react_to_change(&mut self, problem: &mut dyn FitnessGateway) -> Result<(), BudgetExhausted> {
        let spread = self.state.observe_relocations();
        self.state.refresh_memories(&[], problem)?;
        let bounds = problem.bounds();
        let AlgorithmState { subpops, rng, .. } = &mut self.state;
        for sp in subpops.iter_mut() {
            brownian_step(sp, spread, bounds, rng, problem)?;
        }
        Ok(())
    }
}
