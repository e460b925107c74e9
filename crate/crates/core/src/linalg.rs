//! Small dense matrices: Pauli algebra, the closed-form 2×2 exponential,
//! scaling-and-squaring for the 4×4/8×8 blocks, and the real embedding used
//! for antilinear (complex-conjugating) terms.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat<const N: usize> = [[C64; N]; N];
pub type Mat2 = Mat<2>;
pub type Mat4 = Mat<4>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub const SIGMA_X: Mat2 = [[ZERO, ONE], [ONE, ZERO]];
pub const SIGMA_Y: Mat2 = [[ZERO, C64::new(0.0, -1.0)], [I, ZERO]];
pub const SIGMA_Z: Mat2 = [[ONE, ZERO], [ZERO, C64::new(-1.0, 0.0)]];

/// Below this |θ| the Pauli exponential switches to its Taylor series.
const SERIES_THRESHOLD: f64 = 1e-8;

pub fn identity<const N: usize>() -> Mat<N> {
    let mut m = [[ZERO; N]; N];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = ONE;
    }
    m
}

pub fn mat_vec<const N: usize>(m: &Mat<N>, v: &[C64; N]) -> [C64; N] {
    let mut out = [ZERO; N];
    for (o, row) in out.iter_mut().zip(m) {
        let mut acc = ZERO;
        for (a, b) in row.iter().zip(v) {
            acc += a * b;
        }
        *o = acc;
    }
    out
}

pub fn mat_mul<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut out = [[ZERO; N]; N];
    for i in 0..N {
        for k in 0..N {
            let aik = a[i][k];
            for j in 0..N {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn mat_add<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut out = *a;
    for (ro, rb) in out.iter_mut().zip(b) {
        for (o, x) in ro.iter_mut().zip(rb) {
            *o += x;
        }
    }
    out
}

pub fn mat_sub<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut out = *a;
    for (ro, rb) in out.iter_mut().zip(b) {
        for (o, x) in ro.iter_mut().zip(rb) {
            *o -= x;
        }
    }
    out
}

pub fn mat_scale<const N: usize>(a: &Mat<N>, s: C64) -> Mat<N> {
    let mut out = *a;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v *= s;
        }
    }
    out
}

pub fn adjoint<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let mut out = [[ZERO; N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = a[j][i].conj();
        }
    }
    out
}

pub fn conj<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let mut out = *a;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v = v.conj();
        }
    }
    out
}

pub fn frobenius<const N: usize>(a: &Mat<N>) -> f64 {
    a.iter().flatten().map(|v| v.norm_sqr()).sum::<f64>().sqrt()
}

/// Kronecker product of two 2×2 matrices, `a ⊗ b`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// `exp(-i (phase + x σx + y σy + z σz))` with complex coefficients.
///
/// Uses `cos θ·I − i (sin θ / θ)(x σx + y σy + z σz)` with θ² = x² + y² + z².
/// Both `cos θ` and `sin θ / θ` are even in θ so the square-root branch is
/// irrelevant.
pub fn pauli_exp(phase: C64, x: C64, y: C64, z: C64) -> Mat2 {
    let theta_sq = x * x + y * y + z * z;
    let (c, sinc) = if theta_sq.norm() < SERIES_THRESHOLD * SERIES_THRESHOLD {
        let t2 = theta_sq;
        let t4 = t2 * t2;
        (
            ONE - t2 / 2.0 + t4 / 24.0,
            ONE - t2 / 6.0 + t4 / 120.0,
        )
    } else {
        let theta = theta_sq.sqrt();
        (theta.cos(), theta.sin() / theta)
    };
    let scalar = (-I * phase).exp();
    let s = -I * sinc;
    [
        [scalar * (c + s * z), scalar * s * (x - I * y)],
        [scalar * s * (x + I * y), scalar * (c - s * z)],
    ]
}

/// Scalar field over which the dense exponential is evaluated.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Send + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn scale(self, s: f64) -> Self;
    fn modulus(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
}

impl Scalar for C64 {
    fn zero() -> Self {
        ZERO
    }
    fn one() -> Self {
        ONE
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
}

fn dense_mul<T: Scalar>(a: &[T], b: &[T], n: usize) -> Vec<T> {
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                out[i * n + j] = out[i * n + j] + aik * b[k * n + j];
            }
        }
    }
    out
}

fn norm_one<T: Scalar>(a: &[T], n: usize) -> f64 {
    (0..n)
        .map(|j| (0..n).map(|i| a[i * n + j].modulus()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential of a row-major `n×n` matrix by scaling and squaring.
///
/// The scaled matrix has 1-norm at most 1/2; the Taylor series is summed
/// until the next term falls below machine epsilon relative to the sum,
/// well inside the 1e-13 truncation budget of the local sub-steps.
pub fn expm<T: Scalar>(a: &[T], n: usize) -> Vec<T> {
    assert_eq!(a.len(), n * n, "expm: shape mismatch");
    let norm = norm_one(a, n);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scale = 0.5f64.powi(squarings as i32);
    let scaled: Vec<T> = a.iter().map(|v| v.scale(scale)).collect();

    let mut result = vec![T::zero(); n * n];
    for i in 0..n {
        result[i * n + i] = T::one();
    }
    let mut term = result.clone();
    for k in 1..40 {
        term = dense_mul(&term, &scaled, n);
        let inv_k = 1.0 / k as f64;
        term.iter_mut().for_each(|v| *v = v.scale(inv_k));
        for (r, t) in result.iter_mut().zip(&term) {
            *r = *r + *t;
        }
        if norm_one(&term, n) <= f64::EPSILON * 0.25 * norm_one(&result, n) {
            break;
        }
    }
    for _ in 0..squarings {
        result = dense_mul(&result, &result, n);
    }
    result
}

/// Exponential of a fixed-size complex matrix.
pub fn expm_fixed<const N: usize>(a: &Mat<N>) -> Mat<N> {
    let flat: Vec<C64> = a.iter().flatten().copied().collect();
    let e = expm(&flat, N);
    let mut out = [[ZERO; N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = e[i * N + j];
        }
    }
    out
}

/// Real `2N×2N` matrix realizing `ψ ↦ Aψ + Bψ*` on the interleaved vector
/// `(Re ψ₀, Im ψ₀, Re ψ₁, Im ψ₁, …)`.
pub fn real_embedding<const N: usize>(linear: &Mat<N>, antilinear: &Mat<N>) -> Vec<f64> {
    let dim = 2 * N;
    let mut out = vec![0.0; dim * dim];
    for j in 0..N {
        for k in 0..N {
            let a = linear[j][k];
            let b = antilinear[j][k];
            let (r, c) = (2 * j, 2 * k);
            out[r * dim + c] = a.re + b.re;
            out[r * dim + c + 1] = -a.im + b.im;
            out[(r + 1) * dim + c] = a.im + b.im;
            out[(r + 1) * dim + c + 1] = a.re - b.re;
        }
    }
    out
}

/// Applies a real `2N×2N` block (row-major) to a complex N-vector through
/// the interleaved real embedding.
#[inline]
pub fn apply_real_block<const N: usize>(block: &[f64], v: &[C64; N]) -> [C64; N] {
    let dim = 2 * N;
    debug_assert_eq!(block.len(), dim * dim);
    let mut u = [0.0f64; 16];
    for (k, z) in v.iter().enumerate() {
        u[2 * k] = z.re;
        u[2 * k + 1] = z.im;
    }
    let mut out = [ZERO; N];
    for (j, o) in out.iter_mut().enumerate() {
        let row_re = &block[(2 * j) * dim..(2 * j + 1) * dim];
        let row_im = &block[(2 * j + 1) * dim..(2 * j + 2) * dim];
        let mut re = 0.0;
        let mut im = 0.0;
        for c in 0..dim {
            re += row_re[c] * u[c];
            im += row_im[c] * u[c];
        }
        *o = C64::new(re, im);
    }
    out
}

/// Inverse and determinant by Gaussian elimination with partial pivoting.
/// Returns `None` when a pivot vanishes exactly.
pub fn invert<const N: usize>(m: &Mat<N>) -> Option<(Mat<N>, C64)> {
    let mut a = *m;
    let mut inv = identity::<N>();
    let mut det = ONE;
    for col in 0..N {
        let pivot = (col..N)
            .max_by(|&p, &q| a[p][col].norm().total_cmp(&a[q][col].norm()))
            .unwrap_or(col);
        if a[pivot][col].norm() == 0.0 {
            return None;
        }
        if pivot != col {
            a.swap(pivot, col);
            inv.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        let p_inv = ONE / p;
        for j in 0..N {
            a[col][j] *= p_inv;
            inv[col][j] *= p_inv;
        }
        for row in 0..N {
            if row == col {
                continue;
            }
            let factor = a[row][col];
            if factor == ZERO {
                continue;
            }
            for j in 0..N {
                let (ac, ic) = (a[col][j], inv[col][j]);
                a[row][j] -= factor * ac;
                inv[row][j] -= factor * ic;
            }
        }
    }
    Some((inv, det))
}
