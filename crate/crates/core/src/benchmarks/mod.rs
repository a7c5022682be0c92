//! Moving-peaks landscapes.
//!
//! An [`EnvironmentSequence`] is generated once per experiment from the
//! benchmark stream and is read-only afterwards. Each [`EnvironmentState`]
//! is a max-composition of peaks; every peak attains exactly its height at
//! its own center, so the global optimum is known analytically.

mod dynamics;
mod gmpb;
mod mpb;
mod rotation;
mod state;

pub use dynamics::{apply_dynamics, generate_sequence, initial_state, reflect_into_range};
pub use gmpb::{gmpb_fitness, gmpb_peak_value, gmpb_transform};
pub use mpb::{mpb_fitness, mpb_peak_value};
pub use rotation::{
    givens_rotation, identity, is_orthonormal, random_plane_order, rotation_from_angle, Matrix,
};
pub use state::{optimum_of, EnvironmentSequence, EnvironmentState};
