use serde::{Deserialize, Serialize};

/// What an individual does inside its sub-population.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    /// PSO particle moved by the constriction update.
    Neutral,
    /// Resampled uniformly in a ball around the swarm's best.
    Quantum,
    /// Resampled by a Gaussian perturbation of the population's best.
    Brownian,
    /// DE individual without velocity.
    Plain,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Individual {
    pub position: Vec<f64>,
    pub velocity: Vec<f64>,
    pub pbest_position: Vec<f64>,
    pub pbest_value: f64,
    pub current_value: f64,
    pub role: Role,
}

impl Individual {
    /// Unevaluated individual at `position` with zero velocity.
    pub fn new(position: Vec<f64>, role: Role) -> Self {
        let d = position.len();
        Self {
            pbest_position: position.clone(),
            position,
            velocity: vec![0.0; d],
            pbest_value: f64::NEG_INFINITY,
            current_value: f64::NEG_INFINITY,
            role,
        }
    }

    /// Record the fitness of the current position and keep it as personal
    /// best when it improves on it.
    pub fn observe(&mut self, value: f64) {
        self.current_value = value;
        if value > self.pbest_value {
            self.pbest_value = value;
            self.pbest_position.clone_from(&self.position);
        }
    }

    /// Forget everything learned in earlier environments.
    pub fn reset_memory(&mut self) {
        self.pbest_position.clone_from(&self.position);
        self.pbest_value = f64::NEG_INFINITY;
        self.current_value = f64::NEG_INFINITY;
    }
}

/// A group of individuals sharing one global best.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubPopulation {
    pub id: u32,
    pub members: Vec<Individual>,
    pub gbest_position: Vec<f64>,
    pub gbest_value: f64,
    pub converged: bool,
    /// AmQSO bookkeeping: not converged.
    pub is_free: bool,
    /// Best position at the previous change, used to measure relocations.
    pub last_change_gbest: Option<Vec<f64>>,
}

impl SubPopulation {
    pub fn new(id: u32, members: Vec<Individual>) -> Self {
        assert!(
            !members.is_empty(),
            "sub-population needs at least one member"
        );
        let mut sp = Self {
            id,
            gbest_position: members[0].pbest_position.clone(),
            gbest_value: f64::NEG_INFINITY,
            members,
            converged: false,
            is_free: true,
            last_change_gbest: None,
        };
        sp.refresh_gbest();
        sp
    }

    /// Re-derive gbest as the best personal best. The first member wins ties.
    pub fn refresh_gbest(&mut self) {
        let mut best: Option<&Individual> = None;
        for m in &self.members {
            if best.is_none_or(|b| m.pbest_value > b.pbest_value) {
                best = Some(m);
            }
        }
        if let Some(b) = best {
            self.gbest_value = b.pbest_value;
            self.gbest_position.clone_from(&b.pbest_position);
        }
    }

    /// Checks the gbest invariant; used by tests as a post-condition.
    pub fn gbest_consistent(&self) -> bool {
        let best = self
            .members
            .iter()
            .map(|m| m.pbest_value)
            .fold(f64::NEG_INFINITY, f64::max);
        best == self.gbest_value
            && self
                .members
                .iter()
                .any(|m| m.pbest_value == best && m.pbest_position == self.gbest_position)
    }

    pub fn count(&self, role: Role) -> usize {
        self.members.iter().filter(|m| m.role == role).count()
    }

    pub fn positions(&self) -> impl Iterator<Item = &[f64]> {
        self.members.iter().map(|m| m.position.as_slice())
    }
}
