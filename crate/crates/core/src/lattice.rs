//! Periodic grids, multi-component fields and the FFT-based derivative.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{C64, ZERO};
use crate::parallel;

/// Uniform periodic lattice `x_j = x_min + j·dx`, `j ∈ [0, n_points)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_points: usize,
    dx: f64,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min.is_finite() && x_max.is_finite()) || x_max <= x_min {
            return Err(Error::DegenerateInterval { x_min, x_max });
        }
        if n_points < 4 || !n_points.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(n_points));
        }
        Ok(Self {
            x_min,
            x_max,
            n_points,
            dx: (x_max - x_min) / n_points as f64,
        })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        self.n_points == 0
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn length(&self) -> f64 {
        self.x_max - self.x_min
    }

    #[inline]
    pub fn x(&self, j: usize) -> f64 {
        self.x_min + j as f64 * self.dx
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.x(j)).collect()
    }

    /// Angular wavenumber of DFT bin `j` (bins above n/2 are negative; the
    /// Nyquist bin carries `-π/dx`).
    #[inline]
    pub fn wavenumber(&self, j: usize) -> f64 {
        let n = self.n_points as isize;
        let j = j as isize;
        let m = if j < n / 2 { j } else { j - n };
        2.0 * PI * m as f64 / self.length()
    }

    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.n_points).map(|j| self.wavenumber(j)).collect()
    }

    /// Indices of nodes with `lo ≤ x ≤ hi`.
    pub fn window_indices(&self, window: Window) -> impl Iterator<Item = usize> + '_ {
        (0..self.n_points).filter(move |&j| {
            let x = self.x(j);
            x >= window.lo && x <= window.hi
        })
    }

    fn check_window(&self, window: Window) -> Result<()> {
        let slack = 1e-12 * self.length();
        if window.lo > window.hi
            || window.lo < self.x_min - slack
            || window.hi > self.x_max + slack
        {
            return Err(Error::InvalidWindow {
                lo: window.lo,
                hi: window.hi,
            });
        }
        Ok(())
    }
}

/// Closed position interval used to restrict error metrics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64) -> Self {
        Self { lo, hi }
    }

    /// `[-half_width, half_width]` clamped to the grid.
    pub fn centered(grid: &Grid1D, half_width: f64) -> Self {
        Self {
            lo: (-half_width).max(grid.x_min()),
            hi: half_width.min(grid.x_max()),
        }
    }

    pub fn full(grid: &Grid1D) -> Self {
        Self {
            lo: grid.x_min(),
            hi: grid.x_max(),
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Complex field with `C` components per node.
#[derive(Clone, Debug, PartialEq)]
pub struct Field<const C: usize> {
    grid: Grid1D,
    values: Vec<[C64; C]>,
}

/// One-particle Dirac/Majorana spinor.
pub type SpinorField = Field<2>;
/// Two-particle spinor on the relative coordinate.
pub type TwoBodyField = Field<4>;

impl<const C: usize> Field<C> {
    pub fn new(grid: Grid1D, values: Vec<[C64; C]>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::TabulationMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        let field = Self { grid, values };
        field.ensure_finite("field construction")?;
        Ok(field)
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self {
            grid,
            values: vec![[ZERO; C]; grid.len()],
        }
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> [C64; C]) -> Self {
        Self {
            grid,
            values: (0..grid.len()).map(|j| f(grid.x(j))).collect(),
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[[C64; C]] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [[C64; C]] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<[C64; C]> {
        self.values
    }

    pub fn is_finite(&self) -> bool {
        self.values
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn ensure_finite(&self, what: &'static str) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite(what))
        }
    }

    pub fn component(&self, c: usize) -> Vec<C64> {
        self.values.iter().map(|v| v[c]).collect()
    }

    pub fn scaled(&self, s: C64) -> Self {
        let mut out = self.clone();
        for z in out.values.iter_mut().flatten() {
            *z *= s;
        }
        out
    }

    /// Periodic shift by whole lattice sites: `out[j] = self[j - shift]`.
    pub fn shifted(&self, shift: isize) -> Self {
        let n = self.values.len() as isize;
        let s = shift.rem_euclid(n) as usize;
        let mut values = self.values.clone();
        values.rotate_right(s);
        Self {
            grid: self.grid,
            values,
        }
    }

    /// `sqrt(dx · Σ |ψ_c|²)`.
    pub fn norm(&self) -> f64 {
        (self.grid.dx() * self.values.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// `dx · Σ ⟨self, other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.check_grid(&other.grid)?;
        let mut acc = ZERO;
        for (a, b) in self.values.iter().zip(&other.values) {
            for (x, y) in a.iter().zip(b) {
                acc += x.conj() * y;
            }
        }
        Ok(acc * self.grid.dx())
    }

    /// Relative L2 distance `‖self − other‖ / ‖other‖`.
    pub fn relative_distance(&self, other: &Self) -> Result<f64> {
        self.check_grid(&other.grid)?;
        let mut num = 0.0;
        let mut den = 0.0;
        for (a, b) in self.values.iter().zip(&other.values) {
            for (x, y) in a.iter().zip(b) {
                num += (x - y).norm_sqr();
                den += y.norm_sqr();
            }
        }
        Ok(ratio(num, den).sqrt())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.check_grid(&other.grid)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).norm()))
            .fold(0.0, f64::max))
    }

    /// `dx · Σ x |ψ|²` divided by the squared norm.
    pub fn mean_position(&self) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for (j, v) in self.values.iter().enumerate() {
            let rho: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            num += self.grid.x(j) * rho;
            den += rho;
        }
        ratio(num, den)
    }

    pub(crate) fn check_grid(&self, other: &Grid1D) -> Result<()> {
        if self.grid == *other {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else if num == 0.0 {
        0.0
    } else {
        f64::INFINITY
    }
}

/// Real scalar per node (densities, relation factors).
#[derive(Clone, Debug, PartialEq)]
pub struct RealField {
    grid: Grid1D,
    values: Vec<f64>,
}

impl RealField {
    pub fn new(grid: Grid1D, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::TabulationMismatch {
                expected: grid.len(),
                found: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("real field construction"));
        }
        Ok(Self { grid, values })
    }

    pub fn constant(grid: Grid1D, value: f64) -> Self {
        Self {
            grid,
            values: vec![value; grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid1D {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Riemann sum `dx · Σ v`.
    pub fn integral(&self) -> f64 {
        self.grid.dx() * self.values.iter().sum::<f64>()
    }

    /// Pointwise product.
    pub fn mul(&self, other: &RealField) -> Result<RealField> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(RealField {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
        })
    }

    pub fn scaled(&self, s: f64) -> RealField {
        RealField {
            grid: self.grid,
            values: self.values.iter().map(|v| v * s).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &RealField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }
}

pub fn make_grid(x_min: f64, x_max: f64, n_points: usize) -> Result<Grid1D> {
    Grid1D::new(x_min, x_max, n_points)
}

/// Gaussian packet `N · w · exp(−(x−x0)²/(4σ²) + i k0 x)`, normalized on the grid.
pub fn gaussian_packet<const C: usize>(
    grid: &Grid1D,
    x0: f64,
    sigma: f64,
    k0: f64,
    weights: [C64; C],
) -> Result<Field<C>> {
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(Error::InvalidWidth(sigma));
    }
    if weights.iter().all(|w| w.norm() == 0.0) {
        return Err(Error::ZeroSpinor);
    }
    let raw = Field::from_fn(*grid, |x| {
        let envelope = C64::new(-(x - x0).powi(2) / (4.0 * sigma * sigma), k0 * x).exp();
        weights.map(|w| w * envelope)
    });
    let norm = raw.norm();
    if !(norm > 0.0 && norm.is_finite()) {
        return Err(Error::NonFinite("gaussian_packet normalization"));
    }
    Ok(raw.scaled(C64::new(1.0 / norm, 0.0)))
}

/// Pointwise `Σ_c |ψ_c|²`.
pub fn density<const C: usize>(field: &Field<C>) -> RealField {
    RealField {
        grid: *field.grid(),
        values: field
            .values()
            .iter()
            .map(|v| v.iter().map(|z| z.norm_sqr()).sum())
            .collect(),
    }
}

pub fn norm<const C: usize>(field: &Field<C>) -> f64 {
    field.norm()
}

/// Relative L2 density error restricted to `window` (full domain when `None`):
/// `sqrt(Σ_win (a−b)²) / sqrt(Σ_win a²)`.
pub fn l2_density_error(a: &RealField, b: &RealField, window: Option<Window>) -> Result<f64> {
    if a.grid != b.grid {
        return Err(Error::GridMismatch);
    }
    let grid = a.grid;
    let window = window.unwrap_or(Window::full(&grid));
    grid.check_window(window)?;
    let mut num = 0.0;
    let mut den = 0.0;
    for j in grid.window_indices(window) {
        num += (a.values[j] - b.values[j]).powi(2);
        den += a.values[j].powi(2);
    }
    Ok(ratio(num, den).sqrt())
}

/// Forward/inverse FFT pair for one grid size. The inverse is normalized.
#[derive(Clone)]
pub struct FftPair {
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    scale: f64,
}

impl fmt::Debug for FftPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FftPair").field("len", &self.forward.len()).finish()
    }
}

impl FftPair {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
            scale: 1.0 / n as f64,
        }
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn scratch_len(&self) -> usize {
        self.forward
            .get_inplace_scratch_len()
            .max(self.inverse.get_inplace_scratch_len())
    }

    pub fn forward(&self, buf: &mut [C64], scratch: &mut [C64]) {
        self.forward.process_with_scratch(buf, scratch);
    }

    pub fn inverse(&self, buf: &mut [C64], scratch: &mut [C64]) {
        self.inverse.process_with_scratch(buf, scratch);
        buf.iter_mut().for_each(|z| *z *= self.scale);
    }
}

/// Derivative of one periodic complex sequence via `F⁻¹[ik F[·]]`; the
/// Nyquist bin is dropped.
pub fn spectral_derivative_values(grid: &Grid1D, values: &[C64]) -> Vec<C64> {
    let fft = FftPair::new(grid.len());
    let mut scratch = vec![ZERO; fft.scratch_len()];
    let mut buf = values.to_vec();
    derivative_in_place(grid, &fft, &mut buf, &mut scratch);
    buf
}

fn derivative_in_place(grid: &Grid1D, fft: &FftPair, buf: &mut [C64], scratch: &mut [C64]) {
    let n = grid.len();
    fft.forward(buf, scratch);
    parallel::for_each_indexed(buf, |j, z| {
        *z = if j == n / 2 {
            ZERO
        } else {
            *z * C64::new(0.0, grid.wavenumber(j))
        };
    });
    fft.inverse(buf, scratch);
}

/// Component-wise spectral derivative.
pub fn spectral_derivative<const C: usize>(field: &Field<C>) -> Field<C> {
    let grid = *field.grid();
    let fft = FftPair::new(grid.len());
    let mut scratch = vec![ZERO; fft.scratch_len()];
    let mut out = field.clone();
    for c in 0..C {
        let mut buf = field.component(c);
        derivative_in_place(&grid, &fft, &mut buf, &mut scratch);
        for (v, z) in out.values.iter_mut().zip(buf) {
            v[c] = z;
        }
    }
    out
}

/// Norm evaluated from the discrete Fourier coefficients,
/// `sqrt(dx/N · Σ_k |ψ̂_k|²)`.
pub fn momentum_norm<const C: usize>(field: &Field<C>) -> f64 {
    let grid = field.grid();
    let fft = FftPair::new(grid.len());
    let mut scratch = vec![ZERO; fft.scratch_len()];
    let mut total = 0.0;
    for c in 0..C {
        let mut buf = field.component(c);
        fft.forward(&mut buf, &mut scratch);
        total += buf.iter().map(|z| z.norm_sqr()).sum::<f64>();
    }
    (grid.dx() / grid.len() as f64 * total).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn grid_examples() {
        let g = make_grid(-PI, PI, 4).unwrap();
        assert_eq!(g.dx(), PI / 2.0);
        assert_eq!(g.nodes(), vec![-PI, -PI / 2.0, 0.0, PI / 2.0]);

        let g = make_grid(-10.0, 10.0, 1024).unwrap();
        assert_eq!(g.dx(), 20.0 / 1024.0);

        assert!(matches!(make_grid(0.0, 0.0, 8), Err(Error::DegenerateInterval { .. })));
        assert!(matches!(make_grid(0.0, 1.0, 12), Err(Error::NotPowerOfTwo(12))));
        assert!(matches!(make_grid(0.0, 1.0, 2), Err(Error::NotPowerOfTwo(2))));
    }

    #[test]
    fn wavenumber_convention() {
        let g = make_grid(0.0, 2.0 * PI, 8).unwrap();
        let k: Vec<f64> = g.wavenumbers();
        assert_eq!(k, vec![0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0]);
    }

    #[test]
    fn packet_is_normalized_and_validated() {
        let g = make_grid(-10.0, 10.0, 512).unwrap();
        let p = gaussian_packet(&g, 0.0, 1.0, 0.0, [c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((p.norm() - 1.0).abs() < 1e-14);
        assert!((density(&p).integral() - 1.0).abs() < 1e-12);
        assert!(matches!(
            gaussian_packet(&g, 0.0, 1.0, 0.0, [c(0.0, 0.0); 2]),
            Err(Error::ZeroSpinor)
        ));
        assert!(matches!(
            gaussian_packet(&g, 0.0, 0.0, 0.0, [c(1.0, 0.0); 2]),
            Err(Error::InvalidWidth(_))
        ));
    }

    #[test]
    fn centered_packet_density_is_even() {
        let g = make_grid(-8.0, 8.0, 256).unwrap();
        let p = gaussian_packet(&g, 0.0, 1.0, 1.5, [c(0.6, 0.1), c(0.0, -0.3)]).unwrap();
        let rho = density(&p);
        let n = g.len();
        // node j ↔ node n − j mirror x → −x; node 0 (x_min) has no partner
        for j in 1..n {
            assert!((rho.values()[j] - rho.values()[n - j]).abs() < 1e-15);
        }
    }

    #[test]
    fn density_examples() {
        let g = make_grid(0.0, 1.0, 8).unwrap();
        let f = Field::from_fn(g, |_| [c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(density(&f).values().iter().all(|&v| v == 1.0));
        let h = 1.0 / 2f64.sqrt();
        let f = Field::from_fn(g, |_| [c(h, 0.0), c(0.0, h)]);
        assert!(density(&f).values().iter().all(|&v| (v - 1.0).abs() < 1e-15));
    }

    #[test]
    fn density_error_definitions() {
        let g = make_grid(-5.0, 5.0, 128).unwrap();
        let p = gaussian_packet(&g, 0.3, 0.7, 0.0, [c(1.0, 0.0), c(0.5, 0.0)]).unwrap();
        let rho = density(&p);
        assert_eq!(l2_density_error(&rho, &rho, None).unwrap(), 0.0);
        let zero = RealField::constant(g, 0.0);
        assert_eq!(l2_density_error(&rho, &zero, None).unwrap(), 1.0);
        let other = make_grid(-5.0, 5.0, 64).unwrap();
        assert!(matches!(
            l2_density_error(&rho, &RealField::constant(other, 0.0), None),
            Err(Error::GridMismatch)
        ));
        assert!(matches!(
            l2_density_error(&rho, &rho, Some(Window::new(-6.0, 0.0))),
            Err(Error::InvalidWindow { .. })
        ));
    }

    #[test]
    fn density_error_between_shifted_gaussians() {
        // Oracle: ρ_a, ρ_b are normal densities with variance s² = σ² (|ψ|² of
        // exp(−x²/4σ²) normalized). For separation d:
        //   ∫ρ_a² = 1/(2√π s),  ∫ρ_aρ_b = exp(−d²/(4s²))/(2√π s)
        // so the relative error is sqrt(2 − 2 exp(−d²/(4s²))).
        let sigma: f64 = 0.5;
        let d = sigma;
        let s2 = sigma * sigma;
        let expected = (2.0 - 2.0 * (-d * d / (4.0 * s2)).exp()).sqrt();

        let g = make_grid(-10.0, 10.0, 2048).unwrap();
        let w = [c(1.0, 0.0), c(0.0, 0.0)];
        let a = density(&gaussian_packet(&g, 0.0, sigma, 0.0, w).unwrap());
        let b = density(&gaussian_packet(&g, d, sigma, 0.0, w).unwrap());
        let got = l2_density_error(&a, &b, None).unwrap();
        assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
        assert!((expected - 0.6651303886135336).abs() < 1e-12);
    }

    #[test]
    fn plane_wave_derivative() {
        let g = make_grid(0.0, 2.0 * PI, 64).unwrap();
        for m in [-7i32, -1, 0, 3, 31] {
            let k = m as f64;
            let f = Field::from_fn(g, |x| [C64::new(0.0, k * x).exp(), c(2.0, 0.0)]);
            let d = spectral_derivative(&f);
            for (j, v) in d.values().iter().enumerate() {
                let expected = C64::new(0.0, k) * C64::new(0.0, k * g.x(j)).exp();
                assert!((v[0] - expected).norm() < 1e-12);
                assert!(v[1].norm() < 1e-12);
            }
        }
    }

    #[test]
    fn gaussian_derivative_matches_analytic() {
        // d/dx exp(−x²/(4σ²)) = −x/(2σ²) · exp(−x²/(4σ²))
        let sigma = 1.0;
        let g = make_grid(-10.0 * sigma, 10.0 * sigma, 1024).unwrap();
        let f = Field::from_fn(g, |x| [c((-x * x / (4.0 * sigma * sigma)).exp(), 0.0); 2]);
        let exact = Field::from_fn(g, |x| {
            [c(-x / (2.0 * sigma * sigma) * (-x * x / (4.0 * sigma * sigma)).exp(), 0.0); 2]
        });
        let err = spectral_derivative(&f).relative_distance(&exact).unwrap();
        assert!(err < 1e-10, "{err}");
    }

    fn field_strategy(n: usize) -> impl Strategy<Value = Vec<(f64, f64, f64, f64)>> {
        prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64), n)
    }

    fn build(g: Grid1D, raw: &[(f64, f64, f64, f64)]) -> SpinorField {
        Field::new(g, raw.iter().map(|&(a, b, c2, d)| [c(a, b), c(c2, d)]).collect()).unwrap()
    }

    proptest! {
        #[test]
        fn parseval(raw in field_strategy(64)) {
            let g = make_grid(-3.0, 5.0, 64).unwrap();
            let f = build(g, &raw);
            prop_assert!((f.norm() - momentum_norm(&f)).abs() < 1e-12);
        }

        #[test]
        fn derivative_is_linear(a in field_strategy(32), b in field_strategy(32),
                                s in -2.0..2.0f64, t in -2.0..2.0f64) {
            let g = make_grid(0.0, 1.0, 32).unwrap();
            let (fa, fb) = (build(g, &a), build(g, &b));
            let (sa, sb) = (c(s, 0.5), c(t, -1.0));
            let combo = Field::new(g, fa.values().iter().zip(fb.values())
                .map(|(x, y)| [sa * x[0] + sb * y[0], sa * x[1] + sb * y[1]]).collect()).unwrap();
            let lhs = spectral_derivative(&combo);
            let (da, db) = (spectral_derivative(&fa), spectral_derivative(&fb));
            let rhs = Field::new(g, da.values().iter().zip(db.values())
                .map(|(x, y)| [sa * x[0] + sb * y[0], sa * x[1] + sb * y[1]]).collect()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-10);
        }

        #[test]
        fn density_ignores_global_phase(raw in field_strategy(16), theta in -10.0..10.0f64) {
            let g = make_grid(0.0, 1.0, 16).unwrap();
            let f = build(g, &raw);
            let rotated = f.scaled(C64::from_polar(1.0, theta));
            prop_assert!(density(&f).max_abs_diff(&density(&rotated)).unwrap() < 1e-14);
        }
    }
}
