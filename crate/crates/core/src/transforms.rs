//! Static pointwise transforms `U(x)` relating potential-driven and free
//! solutions: the potential → transform compiler, matrix realization,
//! application to fields and the density relation.
//!
//! For one particle `U = exp(−i F1 σx − i F2 σy − i F3 σz − i F4)` with at
//! most one Pauli direction active, so the exponent commutes with its own
//! derivative. For two particles on the relative coordinate
//! `U = exp(−G(x) β₁₂)`.

use serde::{Deserialize, Serialize};

use crate::dynamics::two_body::{
    beta1, beta12, beta2, beta_hat1, beta_hat2, relative_alpha,
};
use crate::dynamics::{Coefficient, PotentialSpec};
use crate::error::{Error, Result};
use crate::lattice::{spectral_derivative_values, Field, Grid1D, RealField, Window};
use crate::linalg::{
    conj, expm_fixed, frobenius, identity, invert, mat_add, mat_mul, mat_scale, mat_sub, mat_vec,
    pauli_exp, Mat, Mat2, Mat4, C64, I, SIGMA_X, SIGMA_Y, SIGMA_Z, ZERO,
};
use crate::parallel;

/// Smallest admissible `|det U|` at any node.
pub const DET_FLOOR: f64 = 1e-300;

/// Default validity threshold on the non-commuting exponent for approximate
/// transforms.
pub const DEFAULT_VALIDITY_THRESHOLD: f64 = 0.2;

/// Which equation, and which elimination rule, a transform targets.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquationKind {
    /// Majorana equation, `V = f1 + f4 σx`, exact.
    Majorana,
    /// Dirac equation, `V = f4 σx` with complex `f4` allowed, exact.
    DiracExact,
    /// Dirac equation, `V = f2 σz + f4 σx`, valid where `F2 ≃ 0`.
    DiracApprox,
    /// Massless equation with `V = m σz`, valid near the origin.
    MasslessMass,
    /// Two-body Majorana oscillator with frequency `omega`, valid near the origin.
    TwoBodyMajorana { omega: f64 },
}

impl EquationKind {
    pub fn is_two_body(&self) -> bool {
        matches!(self, EquationKind::TwoBodyMajorana { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            EquationKind::Majorana => "majorana",
            EquationKind::DiracExact => "dirac_exact",
            EquationKind::DiracApprox => "dirac_approx",
            EquationKind::MasslessMass => "massless_mass",
            EquationKind::TwoBodyMajorana { .. } => "two_body_majorana",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "exactness", rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    /// Valid where the non-commuting exponent satisfies `|F| ≤ threshold`.
    Approximate { threshold: f64 },
}

/// Coefficients of a transform plus the rule it came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TransformSpec {
    pub kind: EquationKind,
    pub exactness: Exactness,
    /// F1
    pub sigma_x: Coefficient,
    /// F2
    pub sigma_y: Coefficient,
    /// F3
    pub sigma_z: Coefficient,
    /// F4
    pub phase: Coefficient,
    /// G in `exp(−G β₁₂)` (two-body only).
    pub beta12: Coefficient,
}

impl TransformSpec {
    /// The identity transform for `kind`.
    pub fn identity(kind: EquationKind) -> Self {
        Self {
            kind,
            exactness: Exactness::Exact,
            sigma_x: Coefficient::Zero,
            sigma_y: Coefficient::Zero,
            sigma_z: Coefficient::Zero,
            phase: Coefficient::Zero,
            beta12: Coefficient::Zero,
        }
    }

    /// A pure `exp(−i F4)` transform.
    pub fn phase_only(phase: Coefficient) -> Self {
        Self {
            phase,
            ..Self::identity(EquationKind::DiracExact)
        }
    }

    /// Checks the structural rules for `kind`.
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: &str| Err(Error::PreconditionViolated(format!("{}: {msg}", self.kind.name())));
        let pauli_active = [&self.sigma_x, &self.sigma_y, &self.sigma_z]
            .iter()
            .filter(|c| !c.is_zero())
            .count();
        if pauli_active > 1 {
            return fail("more than one Pauli direction active in the exponent");
        }
        match self.kind {
            EquationKind::Majorana => {
                if !(self.sigma_y.is_zero() && self.sigma_z.is_zero()) {
                    return fail("F2 and F3 must vanish");
                }
                if !self.sigma_x.is_real() {
                    return fail("F1 must be real");
                }
                if !self.phase.is_imaginary() {
                    return fail("F4 must be imaginary");
                }
            }
            EquationKind::DiracExact => {
                if pauli_active > 0 {
                    return fail("F1, F2, F3 must vanish");
                }
            }
            EquationKind::DiracApprox | EquationKind::MasslessMass => {
                if !(self.sigma_x.is_zero() && self.sigma_z.is_zero()) {
                    return fail("F1 and F3 must vanish");
                }
            }
            EquationKind::TwoBodyMajorana { .. } => {
                if pauli_active > 0 || !self.phase.is_zero() {
                    return fail("only the β₁₂ exponent may be set");
                }
            }
        }
        if !self.kind.is_two_body() && !self.beta12.is_zero() {
            return fail("β₁₂ exponent set on a one-body transform");
        }
        Ok(())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.exactness, Exactness::Exact)
    }

    /// True when every active coefficient is real (one body) or the β₁₂
    /// exponent is imaginary (two body).
    pub fn is_unitary(&self) -> bool {
        if self.kind.is_two_body() {
            self.beta12.is_imaginary()
        } else {
            [&self.sigma_x, &self.sigma_y, &self.sigma_z, &self.phase]
                .iter()
                .all(|c| c.is_real())
        }
    }

    pub fn is_pure_phase(&self) -> bool {
        if self.kind.is_two_body() {
            self.beta12.is_zero()
        } else {
            self.sigma_x.is_zero()
                && self.sigma_y.is_zero()
                && self.sigma_z.is_zero()
                && self.phase.is_real()
        }
    }

    /// Magnitude of the non-commuting exponent at each node (`|F2|` for the
    /// approximate Dirac rules, `|G|` for two bodies, zero otherwise).
    pub fn validity_measure(&self, grid: &Grid1D) -> Result<Vec<f64>> {
        let coeff = match self.kind {
            EquationKind::DiracApprox | EquationKind::MasslessMass => &self.sigma_y,
            EquationKind::TwoBodyMajorana { .. } => &self.beta12,
            _ => return Ok(vec![0.0; grid.len()]),
        };
        Ok(coeff.sample(grid)?.iter().map(|z| z.norm()).collect())
    }

    /// Widest window around the origin on which the validity measure stays
    /// below the threshold; the whole domain for exact transforms.
    pub fn validity_window(&self, grid: &Grid1D) -> Result<Window> {
        let threshold = match self.exactness {
            Exactness::Exact => return Ok(Window::full(grid)),
            Exactness::Approximate { threshold } => threshold,
        };
        let measure = self.validity_measure(grid)?;
        let mut lo = grid.x_min();
        let mut hi = grid.x_max();
        for (j, m) in measure.iter().enumerate() {
            let x = grid.x(j);
            if *m > threshold {
                if x <= 0.0 {
                    lo = lo.max(x + grid.dx());
                } else {
                    hi = hi.min(x - grid.dx());
                }
            }
        }
        Ok(Window::new(lo.min(0.0), hi.max(0.0)))
    }
}

/// `F(x) = ∫ f`. Analytic forms use their closed-form antiderivative (zero at
/// the origin); everything else is integrated by the cumulative trapezoid rule
/// with `F(x_min) = 0`.
pub fn antiderivative(f: &Coefficient, grid: &Grid1D) -> Result<Coefficient> {
    Ok(match f {
        Coefficient::Zero => Coefficient::Zero,
        Coefficient::Constant { value } => Coefficient::Linear { slope: *value },
        Coefficient::Linear { slope } => Coefficient::Quadratic { coeff: slope * 0.5 },
        Coefficient::Cosine {
            amplitude,
            wavenumber,
        } if *wavenumber != 0.0 => Coefficient::Sine {
            amplitude: amplitude / *wavenumber,
            wavenumber: *wavenumber,
        },
        Coefficient::Cosine { amplitude, .. } => Coefficient::Linear { slope: *amplitude },
        other => {
            let values = other.sample(grid)?;
            let dx = grid.dx();
            let mut acc = ZERO;
            let mut out = Vec::with_capacity(values.len());
            out.push(ZERO);
            for w in values.windows(2) {
                acc += (w[0] + w[1]) * (0.5 * dx);
                out.push(acc);
            }
            Coefficient::Tabulated { values: out }
        }
    })
}

fn unsupported(kind: EquationKind, what: &str) -> Error {
    Error::UnsupportedPotential(format!("{what} for {} kind", kind.name()))
}

/// Compiles a potential into the transform that removes it from the
/// equation named by `kind`.
///
/// Fails with [`Error::UnsupportedPotential`] when the potential is outside
/// the class the rule can remove.
pub fn compile_transform(
    potential: &PotentialSpec,
    kind: EquationKind,
    mass: f64,
    grid: &Grid1D,
) -> Result<TransformSpec> {
    potential.check_grid(grid)?;
    let mut spec = TransformSpec::identity(kind);
    match kind {
        EquationKind::Majorana => {
            if !potential.sigma_z.is_zero() {
                return Err(unsupported(kind, "f2 ≠ 0 (σz term)"));
            }
            if !potential.sigma_y.is_zero() {
                return Err(unsupported(kind, "f3 ≠ 0 (σy term)"));
            }
            if !potential.scalar.is_real() {
                return Err(unsupported(kind, "complex f1 makes F1 non-real"));
            }
            if !potential.sigma_x.is_imaginary() {
                return Err(unsupported(kind, "f4 with a real part makes F4 non-imaginary"));
            }
            spec.sigma_x = antiderivative(&potential.scalar, grid)?;
            spec.phase = antiderivative(&potential.sigma_x, grid)?;
        }
        EquationKind::DiracExact => {
            if !potential.scalar.is_zero() {
                return Err(unsupported(kind, "f1 ≠ 0 (scalar term)"));
            }
            if !potential.sigma_z.is_zero() {
                return Err(unsupported(kind, "f2 ≠ 0 (σz term)"));
            }
            if !potential.sigma_y.is_zero() {
                return Err(unsupported(kind, "f3 ≠ 0 (σy term)"));
            }
            spec.phase = antiderivative(&potential.sigma_x, grid)?;
        }
        EquationKind::DiracApprox => {
            if !potential.scalar.is_zero() {
                return Err(unsupported(kind, "f1 ≠ 0 (scalar term)"));
            }
            if !potential.sigma_y.is_zero() {
                return Err(unsupported(kind, "f3 ≠ 0 (σy term)"));
            }
            spec.sigma_y = antiderivative(&potential.sigma_z, grid)?.scaled(-I);
            spec.phase = antiderivative(&potential.sigma_x, grid)?;
            spec.exactness = Exactness::Approximate {
                threshold: DEFAULT_VALIDITY_THRESHOLD,
            };
        }
        EquationKind::MasslessMass => {
            if mass != 0.0 {
                return Err(unsupported(kind, "nonzero mass in the massless equation"));
            }
            if !(potential.scalar.is_zero()
                && potential.sigma_y.is_zero()
                && potential.sigma_x.is_zero())
            {
                return Err(unsupported(kind, "terms other than σz"));
            }
            if !(potential.sigma_z.is_constant() && potential.sigma_z.is_real()) {
                return Err(unsupported(kind, "f2 is not a real constant mass"));
            }
            spec.sigma_y = antiderivative(&potential.sigma_z, grid)?.scaled(-I);
            spec.exactness = Exactness::Approximate {
                threshold: DEFAULT_VALIDITY_THRESHOLD,
            };
        }
        EquationKind::TwoBodyMajorana { omega } => {
            if !potential.is_zero() {
                return Err(unsupported(kind, "external potential on the two-body oscillator"));
            }
            if !(omega.is_finite() && mass.is_finite()) {
                return Err(unsupported(kind, "non-finite m or ω"));
            }
            spec.beta12 = Coefficient::quadratic(0.5 * mass * omega);
            spec.exactness = Exactness::Approximate {
                threshold: DEFAULT_VALIDITY_THRESHOLD,
            };
        }
    }
    spec.validate()?;
    Ok(spec)
}

/// Realized transform: one matrix (and its inverse) per node.
#[derive(Clone, Debug)]
pub struct TransformField<const C: usize> {
    grid: Grid1D,
    matrices: Vec<Mat<C>>,
    inverses: Vec<Mat<C>>,
    is_unitary: bool,
    is_pure_phase: bool,
    det_floor: f64,
}

impl<const C: usize> TransformField<C> {
    fn from_matrices(
        grid: Grid1D,
        matrices: Vec<Mat<C>>,
        is_unitary: bool,
        is_pure_phase: bool,
    ) -> Result<Self> {
        let inverted: Vec<Option<(Mat<C>, C64)>> =
            parallel::map_heavy(matrices.len(), |j| invert(&matrices[j]));
        let mut inverses = Vec::with_capacity(matrices.len());
        let mut det_floor = f64::INFINITY;
        for (node, inv) in inverted.into_iter().enumerate() {
            let (inv, det) = inv.ok_or(Error::NonInvertible { node, det: 0.0 })?;
            let det = det.norm();
            if det.is_nan() || det < DET_FLOOR {
                return Err(Error::NonInvertible { node, det });
            }
            det_floor = det_floor.min(det);
            inverses.push(inv);
        }
        Ok(Self {
            grid,
            matrices,
            inverses,
            is_unitary,
            is_pure_phase,
            det_floor,
        })
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn matrices(&self) -> &[Mat<C>] {
        &self.matrices
    }

    pub fn inverses(&self) -> &[Mat<C>] {
        &self.inverses
    }

    pub fn is_unitary(&self) -> bool {
        self.is_unitary
    }

    pub fn is_pure_phase(&self) -> bool {
        self.is_pure_phase
    }

    pub fn det_floor(&self) -> f64 {
        self.det_floor
    }
}

/// Closed-form realization of a one-body transform.
pub fn build_transform_field(spec: &TransformSpec, grid: &Grid1D) -> Result<TransformField<2>> {
    spec.validate()?;
    if spec.kind.is_two_body() {
        return Err(Error::PreconditionViolated(
            "two-body transform requested as a one-body field".into(),
        ));
    }
    let fx = spec.sigma_x.sample(grid)?;
    let fy = spec.sigma_y.sample(grid)?;
    let fz = spec.sigma_z.sample(grid)?;
    let f0 = spec.phase.sample(grid)?;
    let matrices = parallel::map_indices(grid.len(), |j| pauli_exp(f0[j], fx[j], fy[j], fz[j]));
    TransformField::from_matrices(*grid, matrices, spec.is_unitary(), spec.is_pure_phase())
}

/// Realization of `exp(−G(x) β₁₂)` by scaling and squaring.
pub fn build_two_body_transform_field(
    spec: &TransformSpec,
    grid: &Grid1D,
) -> Result<TransformField<4>> {
    spec.validate()?;
    if !spec.kind.is_two_body() {
        return Err(Error::PreconditionViolated(
            "one-body transform requested as a two-body field".into(),
        ));
    }
    let g = spec.beta12.sample(grid)?;
    let b12 = beta12();
    let matrices = parallel::map_heavy(grid.len(), |j| expm_fixed(&mat_scale(&b12, -g[j])));
    TransformField::from_matrices(*grid, matrices, spec.is_unitary(), spec.is_pure_phase())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `ψ = U φ`
    Forward,
    /// `φ = U⁻¹ ψ`
    Inverse,
}

/// Applies `U` or `U⁻¹` pointwise. Non-unitary transforms are followed by a
/// rescale to unit norm; the factor applied is returned (1 for unitary).
pub fn apply_transform<const C: usize>(
    field: &Field<C>,
    tf: &TransformField<C>,
    direction: Direction,
) -> Result<(Field<C>, f64)> {
    field.check_grid(&tf.grid)?;
    let mats = match direction {
        Direction::Forward => &tf.matrices,
        Direction::Inverse => &tf.inverses,
    };
    let mut out = field.clone();
    parallel::for_each_indexed(out.values_mut(), |j, v| *v = mat_vec(&mats[j], v));
    let mut constant = 1.0;
    if !tf.is_unitary {
        let n = out.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::NonFinite("transform normalization"));
        }
        constant = 1.0 / n;
        out = out.scaled(C64::new(constant, 0.0));
    }
    out.ensure_finite("apply_transform")?;
    Ok((out, constant))
}

/// Pointwise factor `e^{2 Im F4(x)}` with `|ψ|² = factor · |φ|²` for `ψ = Uφ`.
///
/// Requires the Pauli part of the transform to be unitary (real F1..F3).
pub fn density_relation_factor(spec: &TransformSpec, grid: &Grid1D) -> Result<RealField> {
    if spec.kind.is_two_body() && !spec.beta12.is_imaginary() {
        return Err(Error::PreconditionViolated(
            "β₁₂ transform does not preserve pointwise density".into(),
        ));
    }
    if !(spec.sigma_x.is_real() && spec.sigma_y.is_real() && spec.sigma_z.is_real()) {
        return Err(Error::PreconditionViolated(
            "non-unitary Pauli part: no pointwise density relation".into(),
        ));
    }
    if spec.kind == EquationKind::Majorana && !spec.phase.is_imaginary() {
        return Err(Error::PreconditionViolated(
            "Majorana relation needs purely imaginary F4".into(),
        ));
    }
    let f0 = spec.phase.sample(grid)?;
    RealField::new(*grid, f0.iter().map(|z| (2.0 * z.im).exp()).collect())
}

/// Per-node operator norms restricted to the nodes where they are reliable.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResidualProfile {
    pub indices: Vec<usize>,
    pub values: Vec<f64>,
}

impl ResidualProfile {
    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// Maximum over nodes whose index satisfies `keep`.
    pub fn max_where(&self, keep: impl Fn(usize) -> bool) -> f64 {
        self.indices
            .iter()
            .zip(&self.values)
            .filter(|(j, _)| keep(**j))
            .map(|(_, v)| *v)
            .fold(0.0, f64::max)
    }
}

/// Smooth periodic taper: 1 (to round-off) on the interior, 0 near both
/// ends. Lets the non-periodic transforms be differentiated spectrally.
fn taper(grid: &Grid1D) -> (Vec<f64>, Vec<usize>) {
    let s = 8.0 * grid.dx();
    let a = grid.x_min() + 20.0 * s;
    let b = grid.x_max() - 20.0 * s;
    let w: Vec<f64> = (0..grid.len())
        .map(|j| {
            let x = grid.x(j);
            0.5 * (((x - a) / s).tanh() - ((x - b) / s).tanh())
        })
        .collect();
    let interior = (0..grid.len())
        .filter(|&j| (1.0 - w[j]).abs() < 1e-15 && grid.x(j) > a && grid.x(j) < b)
        .collect();
    (w, interior)
}

/// `U′` at every node by spectral differentiation of the tapered entries.
fn spectral_matrix_derivative<const C: usize>(
    grid: &Grid1D,
    mats: &[Mat<C>],
) -> (Vec<Mat<C>>, Vec<usize>) {
    let (w, interior) = taper(grid);
    let mut out = vec![[[ZERO; C]; C]; grid.len()];
    for r in 0..C {
        for c in 0..C {
            let entry: Vec<C64> = mats.iter().zip(&w).map(|(m, w)| m[r][c] * *w).collect();
            let d = spectral_derivative_values(grid, &entry);
            for (o, v) in out.iter_mut().zip(d) {
                o[r][c] = v;
            }
        }
    }
    (out, interior)
}

/// Residual `‖iσx U′ − V U‖` of the potential-removal condition, with `U′`
/// from spectral differentiation. Reported on interior nodes where the
/// taper is exactly one.
pub fn potential_residual(
    tf: &TransformField<2>,
    potential: &PotentialSpec,
) -> Result<ResidualProfile> {
    let grid = tf.grid;
    let v = potential.matrices(&grid)?;
    let (du, interior) = spectral_matrix_derivative(&grid, &tf.matrices);
    let ix = mat_scale(&SIGMA_X, I);
    let values = interior
        .iter()
        .map(|&j| {
            let lhs = mat_mul(&ix, &du[j]);
            let rhs = mat_mul(&v[j], &tf.matrices[j]);
            frobenius(&mat_sub(&lhs, &rhs))
        })
        .collect();
    Ok(ResidualProfile {
        indices: interior,
        values,
    })
}

/// Residual `‖U′ + mωx β₁₂ U‖` of the two-body oscillator coupling.
pub fn two_body_residual(tf: &TransformField<4>, mass: f64, omega: f64) -> ResidualProfile {
    let grid = tf.grid;
    let (du, interior) = spectral_matrix_derivative(&grid, &tf.matrices);
    let b12 = beta12();
    let values = interior
        .iter()
        .map(|&j| {
            let coupling = mat_scale(&mat_mul(&b12, &tf.matrices[j]), C64::new(mass * omega * grid.x(j), 0.0));
            frobenius(&mat_add(&du[j], &coupling))
        })
        .collect();
    ResidualProfile {
        indices: interior,
        values,
    }
}

/// Equation whose free generator is tested against a transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FreeEquation {
    Dirac,
    Majorana,
}

/// Pointwise defect of the free generator under conjugation by `U`:
/// `‖U⁻¹σxU − σx‖ + m‖U⁻¹ σz U − σz‖` (Dirac) or
/// `‖U⁻¹σxU − σx‖ + m‖U⁻¹ σy U* − σy‖` (Majorana).
/// Zero for exact transforms; grows with the non-commuting exponent otherwise.
pub fn commutation_defect(
    tf: &TransformField<2>,
    mass: f64,
    equation: FreeEquation,
) -> Vec<f64> {
    parallel::map_indices(tf.grid.len(), |j| {
        let u = &tf.matrices[j];
        let u_inv = &tf.inverses[j];
        let kinetic = mat_sub(&mat_mul(u_inv, &mat_mul(&SIGMA_X, u)), &SIGMA_X);
        let mass_term = match equation {
            FreeEquation::Dirac => mat_sub(&mat_mul(u_inv, &mat_mul(&SIGMA_Z, u)), &SIGMA_Z),
            FreeEquation::Majorana => {
                mat_sub(&mat_mul(u_inv, &mat_mul(&SIGMA_Y, &conj(u))), &SIGMA_Y)
            }
        };
        frobenius(&kinetic) + mass * frobenius(&mass_term)
    })
}

/// Two-body analogue of [`commutation_defect`] with `α₁ − α₂` as kinetic
/// matrix and `β₁ + β₂` (Dirac) or the antilinear `β̂₁ + β̂₂` (Majorana) as
/// mass matrix.
pub fn two_body_commutation_defect(
    tf: &TransformField<4>,
    mass: f64,
    equation: FreeEquation,
) -> Vec<f64> {
    let d = relative_alpha();
    let dirac_mass = mat_add(&beta1(), &beta2());
    let majorana_mass = mat_add(&beta_hat1(), &beta_hat2());
    parallel::map_indices(tf.grid.len(), |j| {
        let u = &tf.matrices[j];
        let u_inv = &tf.inverses[j];
        let kinetic = mat_sub(&mat_mul(u_inv, &mat_mul(&d, u)), &d);
        let mass_term: Mat4 = match equation {
            FreeEquation::Dirac => mat_sub(&mat_mul(u_inv, &mat_mul(&dirac_mass, u)), &dirac_mass),
            FreeEquation::Majorana => mat_sub(
                &mat_mul(u_inv, &mat_mul(&majorana_mass, &conj(u))),
                &majorana_mass,
            ),
        };
        frobenius(&kinetic) * std::f64::consts::FRAC_1_SQRT_2 + mass * frobenius(&mass_term)
    })
}

/// `σx U σx`
pub fn sigma_x_conjugate(u: &Mat2) -> Mat2 {
    mat_mul(&SIGMA_X, &mat_mul(u, &SIGMA_X))
}

/// Max over nodes of `‖U†U − I‖`.
pub fn unitarity_defect<const C: usize>(tf: &TransformField<C>) -> f64 {
    tf.matrices
        .iter()
        .map(|u| frobenius(&mat_sub(&mat_mul(&crate::linalg::adjoint(u), u), &identity())))
        .fold(0.0, f64::max)
}
