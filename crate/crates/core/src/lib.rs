//! Numerical check that 1D Dirac and Majorana dynamics under certain static
//! potentials can be reproduced by free evolution of a statically transformed
//! initial state.
//!
//! Module map:
//! - [`lattice`]: periodic grids, spinor fields, densities and spectral derivatives.
//! - [`dynamics`]: split-step propagators (Dirac, Majorana, two-body oscillators).
//! - [`transforms`]: potential → transform compiler, transform fields, density relation.
//! - [`scenarios`]: end-to-end comparisons between potential and transformed-free runs.
//! - [`cli`]: config parsing and data emission.

pub mod cli;
pub mod dynamics;
pub mod error;
pub mod lattice;
pub mod linalg;
pub mod parallel;
pub mod scenarios;
pub mod transforms;

pub use error::{Error, Result};
pub use lattice::{Field, Grid1D, RealField, SpinorField, TwoBodyField, Window};
