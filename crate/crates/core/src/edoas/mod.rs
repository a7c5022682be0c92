//! Evolutionary dynamic optimization algorithms.
//!
//! Each algorithm is a sub-population generator (its constructor), a set of
//! iterative components ([`Edoa::iterate`]) and a change reaction
//! ([`Edoa::react_to_change`]). Algorithms see the problem only through a
//! [`FitnessGateway`]; they are told about changes by the driver loop and
//! never detect them.
//!
//! New algorithms plug in by implementing [`Edoa`] and registering a
//! constructor under a name with [`Registry::register`].

mod amqso;
mod config;
mod dynde;
mod mqso;
mod rpso;
mod state;

pub use amqso::AmQso;
pub use config::EdoaConfig;
pub use dynde::DynDe;
pub use mqso::MQso;
pub use rpso::Rpso;
pub use state::AlgorithmState;

use thiserror::Error;

use crate::error::{BudgetExhausted, ConfigError};
use crate::evaluation::FitnessGateway;
use crate::random::Stream;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdoaError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    BudgetExhausted(#[from] BudgetExhausted),
}

pub trait Edoa: Send {
    fn name(&self) -> &str;

    fn state(&self) -> &AlgorithmState;

    fn state_mut(&mut self) -> &mut AlgorithmState;

    /// One pass of the iterative components. May stop part-way with
    /// [`BudgetExhausted`].
    fn iterate(&mut self, problem: &mut dyn FitnessGateway) -> Result<(), BudgetExhausted>;

    /// Called by the driver after an iteration during which the environment
    /// changed.
    fn react_to_change(&mut self, problem: &mut dyn FitnessGateway) -> Result<(), BudgetExhausted>;
}

/// Builds and initializes an algorithm; initial members are evaluated.
pub type EdoaFactory =
    fn(&EdoaConfig, &mut dyn FitnessGateway, Stream) -> Result<Box<dyn Edoa>, EdoaError>;

/// Name to constructor table.
#[derive(Clone)]
pub struct Registry {
    entries: Vec<(String, EdoaFactory)>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            entries: Vec::new(),
        }
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register("RPSO", |c, p, s| Ok(Box::new(Rpso::new(c, p, s)?)));
        r.register("mQSO", |c, p, s| Ok(Box::new(MQso::new(c, p, s)?)));
        r.register("AmQSO", |c, p, s| Ok(Box::new(AmQso::new(c, p, s)?)));
        r.register("DynDE", |c, p, s| Ok(Box::new(DynDe::new(c, p, s)?)));
        r
    }

    /// Add or replace an algorithm.
    pub fn register(&mut self, name: &str, factory: EdoaFactory) {
        self.entries.retain(|(n, _)| !n.eq_ignore_ascii_case(name));
        self.entries.push((name.to_string(), factory));
    }

    pub fn names(&self) -> Vec<&str> {
        self.entries.iter().map(|(n, _)| n.as_str()).collect()
    }

    /// Canonical spelling of a registered name, matched case-insensitively.
    pub fn resolve(&self, name: &str) -> Result<&str, ConfigError> {
        self.entries
            .iter()
            .find(|(n, _)| n.eq_ignore_ascii_case(name))
            .map(|(n, _)| n.as_str())
            .ok_or_else(|| {
                ConfigError::new(format!(
                    "unknown algorithm '{name}'; valid algorithms: {}",
                    self.names().join(", ")
                ))
            })
    }

    pub fn create(
        &self,
        config: &EdoaConfig,
        problem: &mut dyn FitnessGateway,
        rng: Stream,
    ) -> Result<Box<dyn Edoa>, EdoaError> {
        let name = self.resolve(&config.algorithm)?;
        let (_, factory) = self
            .entries
            .iter()
            .find(|(n, _)| n == name)
            .expect("resolved name is registered");
        factory(config, problem, rng)
    }
}
