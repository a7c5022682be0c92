use super::mqso::quantum_layout;
use super::state::{reinitialize, AlgorithmState, Layout};
use super::{Edoa, EdoaConfig, EdoaError};
use crate::components::{
    exclusion, exclusion_radius, is_converged, pso_step, quantum_step, worst_subpop, PsoParams,
};
use crate::error::BudgetExhausted;
use crate::evaluation::FitnessGateway;
use crate::random::Stream;

/// Quantum multi-swarm that starts with one swarm, adds a swarm whenever
/// none is free (unconverged) and drops the worst free swarm when more than
/// `n_excess` are free.
#[derive(Debug, Clone)]
pub struct AmQso {
    pso: PsoParams,
    layout: Layout,
    n_excess: usize,
    r_cloud: f64,
    state: AlgorithmState,
}

impl AmQso {
    pub fn new(
        config: &EdoaConfig,
        problem: &mut dyn FitnessGateway,
        rng: Stream,
    ) -> Result<Self, EdoaError> {
        config.validate()?;
        let layout = quantum_layout(config)?;
        let mut alg = Self {
            pso: config.pso,
            layout,
            n_excess: config.n_excess,
            r_cloud: config.initial_shift_estimate,
            state: AlgorithmState::new(rng, config.initial_shift_estimate),
        };
        alg.state.spawn(layout, problem)?;
        Ok(alg)
    }

    /// Exclusion and convergence radius for the current number of swarms.
    pub fn radius(&self, problem: &dyn FitnessGateway) -> f64 {
        exclusion_radius(
            problem.bounds(),
            self.state.subpops.len(),
            problem.dimension(),
        )
    }

    pub fn cloud_radius(&self) -> f64 {
        self.r_cloud
    }
}

impl Edoa for AmQso {
    fn name(&self) -> &str {
        "AmQSO"
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
        let radius = self.radius(problem);
        {
            let AlgorithmState { subpops, rng, .. } = &mut self.state;
            for sp in subpops.iter_mut() {
                pso_step(sp, &self.pso, bounds, rng, problem)?;
                quantum_step(sp, self.r_cloud, bounds, rng, problem)?;
            }
            exclusion(subpops, radius, |sp| reinitialize(sp, rng, problem))?;
            for sp in subpops.iter_mut() {
                sp.converged = is_converged(sp, radius);
                sp.is_free = !sp.converged;
            }
        }

        let free = self.state.subpops.iter().filter(|sp| sp.is_free).count();
        if free == 0 {
            self.state.spawn(self.layout, problem)?;
        } else if free > self.n_excess {
            let free_idx: Vec<usize> = (0..self.state.subpops.len())
                .filter(|&i| self.state.subpops[i].is_free)
                .collect();
            let w = worst_subpop(free_idx.iter().map(|&i| &self.state.subpops[i]))
                .expect("free swarms exist");
            self.state.subpops.remove(free_idx[w]);
        }
        Ok(())
    }

    fn react_to_change(&mut self, problem: &mut dyn FitnessGateway) -> Result<(), BudgetExhausted> {
        self.r_cloud = self.state.observe_relocations();
        self.state.refresh_memories(&[], problem)
    }
}
