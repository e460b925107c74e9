//! Two-body Dirac and Majorana oscillators on the relative coordinate
//! `x = (x₁ − x₂)/√2`.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::Result;
use crate::lattice::{Grid1D, TwoBodyField};
use crate::linalg::{
    expm, expm_fixed, identity, kron, mat_add, mat_mul, mat_scale, mat_sub, real_embedding, Mat2,
    Mat4, C64, I, SIGMA_X, SIGMA_Y, SIGMA_Z,
};
use crate::parallel;

use super::split::{run_schedule, EvolutionConfig, LocalStep, Snapshot, SplitStep};

fn one() -> Mat2 {
    identity::<2>()
}

/// `α₁ = σx ⊗ 1`
pub fn alpha1() -> Mat4 {
    kron(&SIGMA_X, &one())
}

/// `α₂ = 1 ⊗ σx`
pub fn alpha2() -> Mat4 {
    kron(&one(), &SIGMA_X)
}

/// `β₁ = σz ⊗ 1`
pub fn beta1() -> Mat4 {
    kron(&SIGMA_Z, &one())
}

/// `β₂ = 1 ⊗ σz`
pub fn beta2() -> Mat4 {
    kron(&one(), &SIGMA_Z)
}

/// `β₁₂ = σy ⊗ σy`
pub fn beta12() -> Mat4 {
    kron(&SIGMA_Y, &SIGMA_Y)
}

/// `β̂₁ = σy ⊗ 1`
pub fn beta_hat1() -> Mat4 {
    kron(&SIGMA_Y, &one())
}

/// `β̂₂ = 1 ⊗ σy`
pub fn beta_hat2() -> Mat4 {
    kron(&one(), &SIGMA_Y)
}

/// `α₁ − α₂`
pub fn relative_alpha() -> Mat4 {
    mat_sub(&alpha1(), &alpha2())
}

/// Free two-body Dirac symbol `(k/√2)(α₁ − α₂) + (β₁ + β₂) m`.
pub fn dirac_symbol(k: f64, mass: f64) -> Mat4 {
    mat_add(
        &mat_scale(&relative_alpha(), C64::new(k * FRAC_1_SQRT_2, 0.0)),
        &mat_scale(&mat_add(&beta1(), &beta2()), C64::new(mass, 0.0)),
    )
}

/// Linear pointwise part of `ψ̇` from the oscillator coupling,
/// `−(1/√2) mωx (α₁ − α₂) β₁₂`.
pub fn oscillator_generator(mass: f64, omega: f64, x: f64) -> Mat4 {
    mat_scale(
        &mat_mul(&relative_alpha(), &beta12()),
        C64::new(-FRAC_1_SQRT_2 * mass * omega * x, 0.0),
    )
}

fn symbols(grid: &Grid1D, mass: f64, tau: f64) -> Vec<Mat4> {
    parallel::map_heavy(grid.len(), |j| {
        expm_fixed(&mat_scale(&dirac_symbol(grid.wavenumber(j), mass), -I * tau))
    })
}

/// Propagator for
/// `i ψ̇ = −(i/√2)(α₁−α₂)(ψ′ + mωx β₁₂ ψ) − i(β̂₁+β̂₂) m ψ*`.
pub fn two_body_majorana_propagator(
    grid: &Grid1D,
    mass: f64,
    omega: f64,
    dt: f64,
) -> SplitStep<4> {
    let kinetic = symbols(grid, 0.0, dt);
    let local = if mass == 0.0 {
        LocalStep::Identity
    } else {
        let antilinear = mat_scale(&mat_add(&beta_hat1(), &beta_hat2()), C64::new(-mass, 0.0));
        let half = 0.5 * dt;
        let blocks: Vec<Vec<f64>> = parallel::map_heavy(grid.len(), |j| {
            let linear = oscillator_generator(mass, omega, grid.x(j));
            let gen: Vec<f64> = real_embedding(&linear, &antilinear)
                .into_iter()
                .map(|a| a * half)
                .collect();
            expm(&gen, 8)
        });
        LocalStep::RealLinear(blocks.concat())
    };
    SplitStep::new(*grid, dt, kinetic, local)
}

/// Propagator for
/// `i ψ̇ = −(i/√2)(α₁−α₂)(ψ′ + mωx β₁₂ ψ) + (β₁+β₂) m ψ`.
/// The free part (including the mass) is exact per mode.
pub fn two_body_dirac_propagator(grid: &Grid1D, mass: f64, omega: f64, dt: f64) -> SplitStep<4> {
    let kinetic = symbols(grid, mass, dt);
    let local = if mass * omega == 0.0 {
        LocalStep::Identity
    } else {
        let half = 0.5 * dt;
        LocalStep::Linear(parallel::map_heavy(grid.len(), |j| {
            expm_fixed(&mat_scale(
                &oscillator_generator(mass, omega, grid.x(j)),
                C64::new(half, 0.0),
            ))
        }))
    };
    SplitStep::new(*grid, dt, kinetic, local)
}

/// Evolves under the two-body Majorana oscillator with mass `cfg.mass`.
pub fn evolve_two_body_majorana(
    field: &TwoBodyField,
    omega: f64,
    cfg: &EvolutionConfig,
) -> Result<Vec<Snapshot<4>>> {
    cfg.validate()?;
    let mut prop = two_body_majorana_propagator(field.grid(), cfg.mass, omega, cfg.dt);
    run_schedule(&mut prop, field, cfg)
}

/// Evolves under the two-body Dirac oscillator with mass `cfg.mass`.
pub fn evolve_two_body_dirac(
    field: &TwoBodyField,
    omega: f64,
    cfg: &EvolutionConfig,
) -> Result<Vec<Snapshot<4>>> {
    cfg.validate()?;
    let mut prop = two_body_dirac_propagator(field.grid(), cfg.mass, omega, cfg.dt);
    run_schedule(&mut prop, field, cfg)
}
