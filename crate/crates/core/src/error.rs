use thiserror::Error;

/// Raised by the fitness gateway once `change_frequency * environment_count`
/// evaluations have been spent. Optimizer loops treat it as a clean stop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("fitness evaluation budget exhausted")]
pub struct BudgetExhausted;

/// Invalid or inconsistent configuration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{0}")]
pub struct ConfigError(pub String);

impl ConfigError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}
