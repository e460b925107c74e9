use crate::error::Result;
use crate::lattice::{Grid1D, SpinorField};
use crate::linalg::{pauli_exp, Mat2, C64, ZERO};

use super::potential::PotentialSpec;
use super::split::{run_schedule, EvolutionConfig, LocalStep, Snapshot, SplitStep};

/// Exact free propagator symbol `exp(−i(kσx + mσz)τ)` for every mode of `grid`.
pub fn free_dirac_symbols(grid: &Grid1D, mass: f64, tau: f64) -> Vec<Mat2> {
    symbols(grid, mass, [ZERO; 4], tau)
}

/// Symbols with a constant potential `c1 + c2 σz + c3 σy + c4 σx` folded in.
fn symbols(grid: &Grid1D, mass: f64, c: [C64; 4], tau: f64) -> Vec<Mat2> {
    (0..grid.len())
        .map(|j| {
            let k = grid.wavenumber(j);
            pauli_exp(
                c[0] * tau,
                (C64::new(k, 0.0) + c[3]) * tau,
                c[2] * tau,
                (C64::new(mass, 0.0) + c[1]) * tau,
            )
        })
        .collect()
}

/// Propagator for `i ψ̇ = −i σx ψ′ + (σz m + V)ψ`.
///
/// The translation-invariant part (kinetic, mass and any constant terms of
/// `V`) is exact per mode, so a constant `V` introduces no splitting error.
pub fn dirac_propagator(
    grid: &Grid1D,
    mass: f64,
    potential: &PotentialSpec,
    dt: f64,
) -> Result<SplitStep<2>> {
    potential.check_grid(grid)?;
    let (constant, rest) = potential.split_constant();
    let local = if rest.is_zero() {
        LocalStep::Identity
    } else {
        LocalStep::Linear(rest.exponentials(grid, 0.5 * dt)?)
    };
    Ok(SplitStep::new(*grid, dt, symbols(grid, mass, constant, dt), local))
}

/// One exact free Dirac step of length `cfg.dt`.
pub fn free_dirac_step(field: &SpinorField, cfg: &EvolutionConfig) -> Result<SpinorField> {
    let mut prop = dirac_propagator(field.grid(), cfg.mass, &PotentialSpec::zero(), cfg.dt)?;
    let mut out = field.clone();
    prop.step(&mut out)?;
    Ok(out)
}

/// Strang-split evolution under a static potential. Complex (non-Hermitian)
/// potentials are propagated as given: the norm is free to drift.
pub fn evolve_dirac(
    field: &SpinorField,
    potential: &PotentialSpec,
    cfg: &EvolutionConfig,
) -> Result<Vec<Snapshot<2>>> {
    cfg.validate()?;
    let mut prop = dirac_propagator(field.grid(), cfg.mass, potential, cfg.dt)?;
    run_schedule(&mut prop, field, cfg)
}
