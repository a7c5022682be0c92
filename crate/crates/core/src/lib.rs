//! Laboratory for evolutionary dynamic optimization.
//!
//! The crate is organised around the life cycle of one experiment:
//!
//! * [`benchmarks`] builds the complete sequence of environments of a moving
//!   peaks problem (MPB or GMPB) before any optimizer runs.
//! * [`evaluation`] is the only gateway to fitness values. It counts
//!   evaluations, switches environments every `change_frequency` calls and
//!   logs the data the error indicators need.
//! * [`components`] holds the shared optimizer building blocks (constriction
//!   PSO, DE, quantum and Brownian individuals, exclusion, anti-convergence,
//!   shift-severity estimation).
//! * [`edoas`] assembles those blocks into RPSO, mQSO, AmQSO and DynDE behind
//!   a common [`edoas::Edoa`] contract.
//! * [`indicators`] computes offline error and the average error before
//!   changes, and aggregates runs.
//! * [`runner`] orchestrates seeded experiments, writes result files and
//!   hosts the command line interface.

pub mod benchmarks;
pub mod bounds;
pub mod components;
pub mod edoas;
pub mod error;
pub mod evaluation;
pub mod indicators;
pub mod population;
pub mod problem;
pub mod random;
pub mod runner;

pub use bounds::{absorb_bounds, Bounds};
pub use error::{BudgetExhausted, ConfigError};
pub use population::{Individual, Role, SubPopulation};
pub use problem::{BenchmarkKind, ProblemSpec};
pub use random::{RandomStreams, Stream};
