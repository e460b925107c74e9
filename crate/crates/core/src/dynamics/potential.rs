//! Coefficient functions and the four-term potential `f1 + f2 σz + f3 σy + f4 σx`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Grid1D;
use crate::linalg::{pauli_exp, Mat2, C64, ZERO};

/// A complex-valued function of position: a named analytic form or a table
/// sampled on a specific grid.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum Coefficient {
    #[default]
    Zero,
    /// `value`
    Constant { value: Complex64 },
    /// `slope · x`
    Linear { slope: Complex64 },
    /// `coeff · x²`
    Quadratic { coeff: Complex64 },
    /// `amplitude · cos(wavenumber · x)`
    Cosine { amplitude: Complex64, wavenumber: f64 },
    /// `amplitude · sin(wavenumber · x)`
    Sine { amplitude: Complex64, wavenumber: f64 },
    /// One value per grid node.
    Tabulated { values: Vec<Complex64> },
}

impl Coefficient {
    pub fn constant(value: impl Into<C64>) -> Self {
        Coefficient::Constant { value: value.into() }
    }

    pub fn linear(slope: impl Into<C64>) -> Self {
        Coefficient::Linear { slope: slope.into() }
    }

    pub fn quadratic(coeff: impl Into<C64>) -> Self {
        Coefficient::Quadratic { coeff: coeff.into() }
    }

    pub fn cosine(amplitude: impl Into<C64>, wavenumber: f64) -> Self {
        Coefficient::Cosine {
            amplitude: amplitude.into(),
            wavenumber,
        }
    }

    pub fn sine(amplitude: impl Into<C64>, wavenumber: f64) -> Self {
        Coefficient::Sine {
            amplitude: amplitude.into(),
            wavenumber,
        }
    }

    pub fn tabulated(values: Vec<C64>) -> Self {
        Coefficient::Tabulated { values }
    }

    /// Value at `x` for analytic forms; `None` for tables.
    pub fn eval(&self, x: f64) -> Option<C64> {
        Some(match self {
            Coefficient::Zero => ZERO,
            Coefficient::Constant { value } => *value,
            Coefficient::Linear { slope } => slope * x,
            Coefficient::Quadratic { coeff } => coeff * (x * x),
            Coefficient::Cosine {
                amplitude,
                wavenumber,
            } => amplitude * (wavenumber * x).cos(),
            Coefficient::Sine {
                amplitude,
                wavenumber,
            } => amplitude * (wavenumber * x).sin(),
            Coefficient::Tabulated { .. } => return None,
        })
    }

    /// Values on every node of `grid`.
    pub fn sample(&self, grid: &Grid1D) -> Result<Vec<C64>> {
        match self {
            Coefficient::Tabulated { values } => {
                if values.len() != grid.len() {
                    return Err(Error::TabulationMismatch {
                        expected: grid.len(),
                        found: values.len(),
                    });
                }
                Ok(values.clone())
            }
            analytic => Ok((0..grid.len())
                .map(|j| analytic.eval(grid.x(j)).unwrap_or(ZERO))
                .collect()),
        }
    }

    fn parameters(&self) -> Vec<C64> {
        match self {
            Coefficient::Zero => vec![],
            Coefficient::Constant { value } => vec![*value],
            Coefficient::Linear { slope } => vec![*slope],
            Coefficient::Quadratic { coeff } => vec![*coeff],
            Coefficient::Cosine { amplitude, .. } | Coefficient::Sine { amplitude, .. } => {
                vec![*amplitude]
            }
            Coefficient::Tabulated { values } => values.clone(),
        }
    }

    /// Identically zero (structurally or numerically).
    pub fn is_zero(&self) -> bool {
        self.parameters().iter().all(|z| z.re == 0.0 && z.im == 0.0)
    }

    pub fn is_real(&self) -> bool {
        self.parameters().iter().all(|z| z.im == 0.0)
    }

    pub fn is_imaginary(&self) -> bool {
        self.parameters().iter().all(|z| z.re == 0.0)
    }

    pub fn is_constant(&self) -> bool {
        match self {
            Coefficient::Zero | Coefficient::Constant { .. } => true,
            Coefficient::Cosine { wavenumber, .. } => *wavenumber == 0.0,
            other => other.is_zero(),
        }
    }

    /// Multiplies the function by `s`.
    pub fn scaled(&self, s: C64) -> Coefficient {
        match self {
            Coefficient::Zero => Coefficient::Zero,
            Coefficient::Constant { value } => Coefficient::Constant { value: value * s },
            Coefficient::Linear { slope } => Coefficient::Linear { slope: slope * s },
            Coefficient::Quadratic { coeff } => Coefficient::Quadratic { coeff: coeff * s },
            Coefficient::Cosine {
                amplitude,
                wavenumber,
            } => Coefficient::Cosine {
                amplitude: amplitude * s,
                wavenumber: *wavenumber,
            },
            Coefficient::Sine {
                amplitude,
                wavenumber,
            } => Coefficient::Sine {
                amplitude: amplitude * s,
                wavenumber: *wavenumber,
            },
            Coefficient::Tabulated { values } => Coefficient::Tabulated {
                values: values.iter().map(|v| v * s).collect(),
            },
        }
    }

    pub fn check_grid(&self, grid: &Grid1D) -> Result<()> {
        if let Coefficient::Tabulated { values } = self {
            if values.len() != grid.len() {
                return Err(Error::TabulationMismatch {
                    expected: grid.len(),
                    found: values.len(),
                });
            }
        }
        Ok(())
    }
}

/// `V(x) = f1(x) + f2(x) σz + f3(x) σy + f4(x) σx`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PotentialSpec {
    /// f1, identity part.
    pub scalar: Coefficient,
    /// f2, σz part (mass-like).
    pub sigma_z: Coefficient,
    /// f3, σy part.
    pub sigma_y: Coefficient,
    /// f4, σx part (vector-potential-like).
    pub sigma_x: Coefficient,
}

impl PotentialSpec {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(f: Coefficient) -> Self {
        Self {
            scalar: f,
            ..Self::default()
        }
    }

    pub fn sigma_z(f: Coefficient) -> Self {
        Self {
            sigma_z: f,
            ..Self::default()
        }
    }

    pub fn sigma_x(f: Coefficient) -> Self {
        Self {
            sigma_x: f,
            ..Self::default()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms().iter().all(|t| t.is_zero())
    }

    /// All four coefficients real, i.e. `V` Hermitian.
    pub fn is_hermitian(&self) -> bool {
        self.terms().iter().all(|t| t.is_real())
    }

    fn terms(&self) -> [&Coefficient; 4] {
        [&self.scalar, &self.sigma_z, &self.sigma_y, &self.sigma_x]
    }

    pub fn check_grid(&self, grid: &Grid1D) -> Result<()> {
        self.terms().iter().try_for_each(|t| t.check_grid(grid))
    }

    /// Splits off the position-independent terms: returns their values as
    /// `[f1, f2, f3, f4]` and the potential with those terms removed.
    pub fn split_constant(&self) -> ([C64; 4], PotentialSpec) {
        let take = |c: &Coefficient| {
            if c.is_constant() {
                (c.eval(0.0).unwrap_or_default(), Coefficient::Zero)
            } else {
                (C64::default(), c.clone())
            }
        };
        let (c1, f1) = take(&self.scalar);
        let (c2, f2) = take(&self.sigma_z);
        let (c3, f3) = take(&self.sigma_y);
        let (c4, f4) = take(&self.sigma_x);
        (
            [c1, c2, c3, c4],
            PotentialSpec {
                scalar: f1,
                sigma_z: f2,
                sigma_y: f3,
                sigma_x: f4,
            },
        )
    }

    /// `(f1, f2, f3, f4)` sampled on the grid.
    pub fn sample(&self, grid: &Grid1D) -> Result<[Vec<C64>; 4]> {
        Ok([
            self.scalar.sample(grid)?,
            self.sigma_z.sample(grid)?,
            self.sigma_y.sample(grid)?,
            self.sigma_x.sample(grid)?,
        ])
    }

    /// The matrix `V(x_j)` at every node.
    pub fn matrices(&self, grid: &Grid1D) -> Result<Vec<Mat2>> {
        let [f1, f2, f3, f4] = self.sample(grid)?;
        Ok((0..grid.len())
            .map(|j| {
                [
                    [f1[j] + f2[j], f4[j] - C64::i() * f3[j]],
                    [f4[j] + C64::i() * f3[j], f1[j] - f2[j]],
                ]
            })
            .collect())
    }

    /// `exp(−i V(x_j) τ)` at every node.
    pub fn exponentials(&self, grid: &Grid1D, tau: f64) -> Result<Vec<Mat2>> {
        let [f1, f2, f3, f4] = self.sample(grid)?;
        Ok((0..grid.len())
            .map(|j| pauli_exp(f1[j] * tau, f4[j] * tau, f3[j] * tau, f2[j] * tau))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::make_grid;
    use crate::linalg::{frobenius, mat_sub, SIGMA_X, SIGMA_Y, SIGMA_Z};

    #[test]
    fn matrices_follow_pauli_decomposition() {
        let g = make_grid(-1.0, 1.0, 8).unwrap();
        let v = PotentialSpec {
            scalar: Coefficient::constant(0.5),
            sigma_z: Coefficient::linear(2.0),
            sigma_y: Coefficient::constant(C64::new(0.0, 1.5)),
            sigma_x: Coefficient::cosine(1.0, 3.0),
        };
        let mats = v.matrices(&g).unwrap();
        for (j, m) in mats.iter().enumerate() {
            let x = g.x(j);
            let mut expected = crate::linalg::mat_scale(&crate::linalg::identity(), C64::new(0.5, 0.0));
            expected = crate::linalg::mat_add(&expected, &crate::linalg::mat_scale(&SIGMA_Z, C64::new(2.0 * x, 0.0)));
            expected = crate::linalg::mat_add(&expected, &crate::linalg::mat_scale(&SIGMA_Y, C64::new(0.0, 1.5)));
            expected = crate::linalg::mat_add(&expected, &crate::linalg::mat_scale(&SIGMA_X, C64::new((3.0 * x).cos(), 0.0)));
            assert!(frobenius(&mat_sub(m, &expected)) < 1e-15);
        }
    }

    #[test]
    fn tabulated_must_match_grid() {
        let g = make_grid(-1.0, 1.0, 8).unwrap();
        let v = PotentialSpec::scalar(Coefficient::tabulated(vec![ZERO; 4]));
        assert!(matches!(v.check_grid(&g), Err(Error::TabulationMismatch { .. })));
    }

    #[test]
    fn flags() {
        assert!(Coefficient::Zero.is_zero());
        assert!(Coefficient::constant(0.0).is_zero());
        assert!(Coefficient::constant(C64::new(0.0, 2.0)).is_imaginary());
        assert!(!Coefficient::constant(C64::new(1.0, 2.0)).is_real());
        assert!(PotentialSpec::scalar(Coefficient::linear(2.0)).is_hermitian());
    }
}
