use rand::seq::index::sample;

use super::state::{AlgorithmState, Layout};
use super::{Edoa, EdoaConfig, EdoaError};
use crate::components::{evaluate_member, pso_step, PsoParams};
use crate::error::{BudgetExhausted, ConfigError};
use crate::evaluation::FitnessGateway;
use crate::random::Stream;

/// Single constriction-PSO swarm that re-randomizes a fixed share of its
/// particles after every change.
#[derive(Debug, Clone)]
pub struct Rpso {
    pso: PsoParams,
    restart_count: usize,
    state: AlgorithmState,
}

impl Rpso {
    pub fn new(
        config: &EdoaConfig,
        problem: &mut dyn FitnessGateway,
        rng: Stream,
    ) -> Result<Self, EdoaError> {
        config.validate()?;
        if config.quantum_count != 0 || config.brownian_count != 0 {
            return Err(ConfigError::new("RPSO uses plain particles only").into());
        }
        let size = config.subpop_size;
        let mut alg = Self {
            pso: config.pso,
            restart_count: (config.restart_fraction * size as f64).round() as usize,
            state: AlgorithmState::new(rng, config.initial_shift_estimate),
        };
        let layout = Layout {
            neutral: size,
            quantum: 0,
            brownian: 0,
            plain: 0,
        };
        alg.state.spawn(layout, problem)?;
        Ok(alg)
    }

    pub fn restart_count(&self) -> usize {
        self.restart_count
    }
}

impl Edoa for Rpso {
    fn name(&self) -> &str {
        "RPSO"
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
        pso_step(&mut subpops[0], &self.pso, bounds, rng, problem)
    }

    fn react_to_change(&mut self, problem: &mut dyn FitnessGateway) -> Result<(), BudgetExhausted> {
        self.state.observe_relocations();
        let bounds = problem.bounds();
        let d = problem.dimension();
        let n = self.state.subpops[0].members.len();
        let chosen: Vec<usize> =
            sample(&mut self.state.rng, n, self.restart_count.min(n)).into_vec();
        let mut outcome = Ok(());
        for &i in &chosen {
            let position = bounds.sample(&mut self.state.rng, d);
            let m = &mut self.state.subpops[0].members[i];
            m.position = position;
            m.velocity.iter_mut().for_each(|v| *v = 0.0);
            m.reset_memory();
            if outcome.is_ok() {
                outcome = evaluate_member(m, problem).map(|_| ());
            }
        }
        if outcome.is_err() {
            self.state.subpops[0].refresh_gbest();
            return outcome;
        }
        let skip: Vec<(usize, usize)> = chosen.iter().map(|&i| (0, i)).collect();
        self.state.refresh_memories(&skip, problem)
    }
}
