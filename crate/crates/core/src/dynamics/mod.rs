//! Time propagation for the one-body Dirac and Majorana equations and the
//! two-body oscillators.
//!
//! Every propagator is a symmetric (Strang) splitting of a pointwise part and
//! a translation-invariant part; the latter is applied exactly per Fourier
//! mode. Antilinear mass terms (`ψ*`) are carried through a real embedding of
//! the spinor, so the local sub-steps are real matrices in that case.

mod dirac;
mod majorana;
mod potential;
mod split;
pub mod two_body;

pub use dirac::{dirac_propagator, evolve_dirac, free_dirac_step, free_dirac_symbols};
pub use majorana::{evolve_majorana, majorana_local_generator, majorana_propagator};
pub use potential::{Coefficient, PotentialSpec};
pub use split::{EvolutionConfig, Snapshot, SplitStep};
pub use two_body::{
    evolve_two_body_dirac, evolve_two_body_majorana, two_body_dirac_propagator,
    two_body_majorana_propagator,
};

/// Default step `dx / (4 · max(1, m·dx))`.
pub fn default_dt(dx: f64, mass: f64) -> f64 {
    0.25 * dx / (mass * dx).max(1.0)
}
