use super::state::{reinitialize, AlgorithmState, Layout};
use super::{Edoa, EdoaConfig, EdoaError};
use crate::components::{
    anti_convergence, exclusion, exclusion_radius, is_converged, pso_step, quantum_step, PsoParams,
};
use crate::error::{BudgetExhausted, ConfigError};
use crate::evaluation::FitnessGateway;
use crate::random::Stream;

pub(crate) fn quantum_layout(config: &EdoaConfig) -> Result<Layout, ConfigError> {
    if config.quantum_count >= config.subpop_size {
        return Err(ConfigError::new(
            "quantum_count must leave at least one neutral particle per swarm",
        ));
    }
    if config.brownian_count != 0 {
        return Err(ConfigError::new("quantum swarms have no Brownian members"));
    }
    Ok(Layout {
        neutral: config.subpop_size - config.quantum_count,
        quantum: config.quantum_count,
        brownian: 0,
        plain: 0,
    })
}

/// Fixed number of swarms of neutral and quantum particles with exclusion
/// and anti-convergence.
#[derive(Debug, Clone)]
pub struct MQso {
    pso: PsoParams,
    r_excl: f64,
    r_conv: f64,
    r_cloud: f64,
    state: AlgorithmState,
}

impl MQso {
    pub fn new(
        config: &EdoaConfig,
        problem: &mut dyn FitnessGateway,
        rng: Stream,
    ) -> Result<Self, EdoaError> {
        config.validate()?;
        let layout = quantum_layout(config)?;
        let r_excl = exclusion_radius(problem.bounds(), config.subpop_count, problem.dimension());
        let mut alg = Self {
            pso: config.pso,
            r_excl,
            r_conv: r_excl,
            r_cloud: config.initial_shift_estimate,
            state: AlgorithmState::new(rng, config.initial_shift_estimate),
        };
        for _ in 0..config.subpop_count {
            alg.state.spawn(layout, problem)?;
        }
        Ok(alg)
    }

    pub fn exclusion_radius(&self) -> f64 {
        self.r_excl
    }

    pub fn cloud_radius(&self) -> f64 {
        self.r_cloud
    }
}

impl Edoa for MQso {
    fn name(&self) -> &str {
        "mQSO"
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
            pso_step(sp, &self.pso, bounds, rng, problem)?;
            quantum_step(sp, self.r_cloud, bounds, rng, problem)?;
        }
        exclusion(subpops, self.r_excl, |sp| reinitialize(sp, rng, problem))?;
        anti_convergence(subpops, self.r_conv, |sp| reinitialize(sp, rng, problem))?;
        for sp in subpops.iter_mut() {
            sp.converged = is_converged(sp, self.r_conv);
        }
        Ok(())
    }

    fn react_to_change(&mut self, problem: &mut dyn FitnessGateway) -> Result<(), BudgetExhausted> {
        self.r_cloud = self.state.observe_relocations();
        self.state.refresh_memories(&[], problem)
    }
}
