//! Value-level algebra for 2×2 complex matrices.
//!
//! A matrix is either held densely ([`Matrix2`]) or as its coordinates on the
//! basis {𝟙, σx, σy, σz} ([`PauliVector`]). The Pauli convention is
//!
//! ```text
//! σx = [[0, 1], [1, 0]]   σy = [[0, -i], [i, 0]]   σz = [[1, 0], [0, -1]]
//! ```

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Below this value of |r·t| the propagator uses a truncated Taylor series
/// for sin(rt)/r and cos(rt).
pub const SERIES_THRESHOLD: f64 = 1e-4;

/// Dense 2×2 complex matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

impl Matrix2 {
    pub const fn new(m00: Complex64, m01: Complex64, m10: Complex64, m11: Complex64) -> Self {
        Matrix2([[m00, m01], [m10, m11]])
    }

    pub const fn identity() -> Self {
        Matrix2([[ONE, ZERO], [ZERO, ONE]])
    }

    pub const fn zero() -> Self {
        Matrix2([[ZERO, ZERO], [ZERO, ZERO]])
    }

    pub fn diag(a: Complex64, d: Complex64) -> Self {
        Matrix2([[a, ZERO], [ZERO, d]])
    }

    pub fn sigma_x() -> Self {
        Matrix2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn sigma_y() -> Self {
        Matrix2([[ZERO, -I], [I, ZERO]])
    }

    pub fn sigma_z() -> Self {
        Matrix2([[ONE, ZERO], [ZERO, -ONE]])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    #[inline]
    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    #[inline]
    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let m = &self.0;
        Matrix2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    pub fn scale_real(&self, s: f64) -> Self {
        let m = &self.0;
        Matrix2([[m[0][0] * s, m[0][1] * s], [m[1][0] * s, m[1][1] * s]])
    }

    /// Entrywise complex conjugate (not the adjoint).
    pub fn conj(&self) -> Self {
        let m = &self.0;
        Matrix2([[m[0][0].conj(), m[0][1].conj()], [m[1][0].conj(), m[1][1].conj()]])
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Matrix2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.is_finite())
    }

    pub fn decompose(&self) -> PauliVector {
        decompose(self)
    }
}

impl Default for Matrix2 {
    fn default() -> Self {
        Matrix2::zero()
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let a = &self.0;
        let b = &rhs.0;
        Matrix2([
            [
                a[0][0] * b[0][0] + a[0][1] * b[1][0],
                a[0][0] * b[0][1] + a[0][1] * b[1][1],
            ],
            [
                a[1][0] * b[0][0] + a[1][1] * b[1][0],
                a[1][0] * b[0][1] + a[1][1] * b[1][1],
            ],
        ])
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;

    fn add(self, rhs: Matrix2) -> Matrix2 {
        let a = &self.0;
        let b = &rhs.0;
        Matrix2([
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ])
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;

    fn sub(self, rhs: Matrix2) -> Matrix2 {
        let a = &self.0;
        let b = &rhs.0;
        Matrix2([
            [a[0][0] - b[0][0], a[0][1] - b[0][1]],
            [a[1][0] - b[1][0], a[1][1] - b[1][1]],
        ])
    }
}

impl Neg for Matrix2 {
    type Output = Matrix2;

    fn neg(self) -> Matrix2 {
        self.scale_real(-1.0)
    }
}

/// Coordinates of a 2×2 matrix on {𝟙, σx, σy, σz}.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PauliVector {
    pub a0: Complex64,
    pub a1: Complex64,
    pub a2: Complex64,
    pub a3: Complex64,
}

impl PauliVector {
    pub const fn new(a0: Complex64, a1: Complex64, a2: Complex64, a3: Complex64) -> Self {
        PauliVector { a0, a1, a2, a3 }
    }

    /// Traceless matrix `field · σ⃗`.
    pub const fn from_field(field: [Complex64; 3]) -> Self {
        PauliVector {
            a0: ZERO,
            a1: field[0],
            a2: field[1],
            a3: field[2],
        }
    }

    /// The (σx, σy, σz) part.
    pub fn field(&self) -> [Complex64; 3] {
        [self.a1, self.a2, self.a3]
    }

    pub fn compose(&self) -> Matrix2 {
        compose(self.a0, self.a1, self.a2, self.a3)
    }

    pub fn is_traceless(&self) -> bool {
        self.a0 == ZERO
    }

    pub fn max_abs_diff(&self, other: &PauliVector) -> f64 {
        [
            self.a0 - other.a0,
            self.a1 - other.a1,
            self.a2 - other.a2,
            self.a3 - other.a3,
        ]
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
    }
}

/// `a0·𝟙 + a1·σx + a2·σy + a3·σz`.
pub fn compose(a0: Complex64, a1: Complex64, a2: Complex64, a3: Complex64) -> Matrix2 {
    Matrix2([[a0 + a3, a1 - I * a2], [a1 + I * a2, a0 - a3]])
}

/// Inverse of [`compose`].
pub fn decompose(m: &Matrix2) -> PauliVector {
    let [[m00, m01], [m10, m11]] = m.0;
    PauliVector {
        a0: (m00 + m11) * 0.5,
        a1: (m01 + m10) * 0.5,
        a2: I * (m01 - m10) * 0.5,
        a3: (m00 - m11) * 0.5,
    }
}

/// Bilinear (not Hermitian) square `r⃗·r⃗`.
#[inline]
pub fn dot(a: [Complex64; 3], b: [Complex64; 3]) -> Complex64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// `cos(r t)` and `sin(r t)/r` for a generator whose square is `r2 = r²`.
///
/// Both are even in `r`, so only `r2` is needed. For |r t| below
/// [`SERIES_THRESHOLD`] the Taylor series is used, which also covers `r = 0`.
#[inline]
pub fn cos_sinc(r2: Complex64, t: f64) -> (Complex64, Complex64) {
    let z2 = r2 * (t * t);
    if z2.norm() < SERIES_THRESHOLD * SERIES_THRESHOLD {
        let cos = ONE - z2 * 0.5 + z2 * z2 / 24.0;
        let sinc = (ONE - z2 / 6.0 + z2 * z2 / 120.0) * t;
        (cos, sinc)
    } else {
        cos_sinc_with_root(r2.sqrt(), t)
    }
}

/// Same as [`cos_sinc`] but with an explicitly chosen square root `r` (either
/// branch). No series fallback, so `r` must not be tiny.
#[inline]
pub fn cos_sinc_with_root(r: Complex64, t: f64) -> (Complex64, Complex64) {
    let rt = r * t;
    (rt.cos(), rt.sin() / r)
}

/// `exp(-i t (r⃗·σ⃗))` for a complex 3-vector `r⃗`.
///
/// Uses `exp(-i t r⃗·σ⃗) = cos(rt) 𝟙 - i sin(rt)/r (r⃗·σ⃗)` with `r² = r⃗·r⃗`,
/// which needs no eigen-decomposition and stays finite through the
/// exceptional point `r⃗·r⃗ = 0`.
pub fn expm_traceless(field: [Complex64; 3], t: f64) -> Matrix2 {
    let (cos, sinc) = cos_sinc(dot(field, field), t);
    assemble_propagator(field, cos, sinc)
}

#[inline]
pub(crate) fn assemble_propagator(field: [Complex64; 3], cos: Complex64, sinc: Complex64) -> Matrix2 {
    let k = -I * sinc;
    compose(cos, k * field[0], k * field[1], k * field[2])
}

/// Roots of `λ² - tr(M) λ + det(M)`, ordered `|g₊| ≥ |g₋|`; equal moduli are
/// ordered by real part, then imaginary part (larger first).
pub fn eigenvalues2(m: &Matrix2) -> (Complex64, Complex64) {
    let s = m.max_abs();
    if s == 0.0 || !s.is_finite() {
        let h = m.trace() * 0.5;
        return (h, h);
    }
    // Work on M/s so the quadratic terms cannot overflow.
    let n = m.scale_real(1.0 / s);
    let [[a, b], [c, d]] = n.0;
    let h = (a + d) * 0.5;
    let half_gap = (a - d) * 0.5;
    // ((a-d)/2)² + bc avoids the cancellation in h² - det near scalar matrices.
    let disc = (half_gap * half_gap + b * c).sqrt();
    let sdisc = if (h.conj() * disc).re >= 0.0 { disc } else { -disc };
    let l1n = h + sdisc;
    let cand = h - sdisc;
    let l2 = if cand.norm() >= 0.5 * l1n.norm() || l1n == ZERO {
        cand * s
    } else {
        // det(M)/l1 without forming det(M), which may leave the f64 range
        let [[_, _], [c_full, d_full]] = m.0;
        (a / l1n) * d_full - (b / l1n) * c_full
    };
    let l1 = l1n * s;
    if precedes(l2, l1) {
        (l2, l1)
    } else {
        (l1, l2)
    }
}

fn precedes(x: Complex64, y: Complex64) -> bool {
    let (nx, ny) = (x.norm(), y.norm());
    if nx != ny {
        return nx > ny;
    }
    if x.re != y.re {
        return x.re > y.re;
    }
    x.im > y.im
}
