use crate::error::Result;
use crate::lattice::{Grid1D, SpinorField};
use crate::linalg::{expm, mat_scale, pauli_exp, real_embedding, Mat2, C64, I, SIGMA_Y, ZERO};
use crate::parallel;

use super::potential::PotentialSpec;
use super::split::{run_schedule, EvolutionConfig, LocalStep, Snapshot, SplitStep};

/// Real 4×4 generator of the pointwise part of the Majorana equation,
/// `ψ̇ = −iVψ − m σy ψ*`, acting on `(Re ψ₁, Im ψ₁, Re ψ₂, Im ψ₂)`.
pub fn majorana_local_generator(mass: f64, v: &Mat2) -> Vec<f64> {
    let linear = mat_scale(v, -I);
    let antilinear = mat_scale(&SIGMA_Y, C64::new(-mass, 0.0));
    real_embedding(&linear, &antilinear)
}

/// Massless kinetic symbol `exp(−ikσx τ)` per mode.
fn kinetic_symbols(grid: &Grid1D, tau: f64) -> Vec<Mat2> {
    (0..grid.len())
        .map(|j| pauli_exp(ZERO, C64::new(grid.wavenumber(j) * tau, 0.0), ZERO, ZERO))
        .collect()
}

/// Propagator for `i ψ̇ = −i σx ψ′ − i σy m ψ* + Vψ`.
///
/// The antilinear mass term is handled in the real embedding: the kinetic
/// part is stepped exactly in momentum space and the mass plus potential
/// part is exponentiated as a real 4×4 block per node.
pub fn majorana_propagator(
    grid: &Grid1D,
    mass: f64,
    potential: &PotentialSpec,
    dt: f64,
) -> Result<SplitStep<2>> {
    potential.check_grid(grid)?;
    let local = if potential.is_zero() && mass == 0.0 {
        LocalStep::Identity
    } else {
        let v = potential.matrices(grid)?;
        let half = 0.5 * dt;
        let blocks: Vec<Vec<f64>> = parallel::map_heavy(grid.len(), |j| {
            let gen: Vec<f64> = majorana_local_generator(mass, &v[j])
                .into_iter()
                .map(|a| a * half)
                .collect();
            expm(&gen, 4)
        });
        LocalStep::RealLinear(blocks.concat())
    };
    Ok(SplitStep::new(*grid, dt, kinetic_symbols(grid, dt), local))
}

pub fn evolve_majorana(
    field: &SpinorField,
    potential: &PotentialSpec,
    cfg: &EvolutionConfig,
) -> Result<Vec<Snapshot<2>>> {
    cfg.validate()?;
    let mut prop = majorana_propagator(field.grid(), cfg.mass, potential, cfg.dt)?;
    run_schedule(&mut prop, field, cfg)
}
