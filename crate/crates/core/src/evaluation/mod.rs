//! The fitness gateway.
//!
//! Optimizers only ever see a [`FitnessGateway`]: they can ask for the
//! dimension and the search box and spend evaluations, nothing else. The
//! concrete gateway is [`EvaluationLedger`], which also owns the environment
//! schedule and the raw logs the indicators are computed from.

mod education;
mod ledger;

pub use education::{EducationFrame, EducationRecorder, LandscapeSnapshot};
pub use ledger::{peek_fitness, EvaluationLedger};

use crate::bounds::Bounds;
use crate::error::BudgetExhausted;

/// Black-box view of a dynamic problem.
pub trait FitnessGateway {
    fn dimension(&self) -> usize;

    fn bounds(&self) -> Bounds;

    /// Spend one evaluation in the current environment.
    fn evaluate(&mut self, x: &[f64]) -> Result<f64, BudgetExhausted>;

    fn is_exhausted(&self) -> bool;
}
