//! One-period monodromy operator and the quantities derived from it.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::complex2::{
    assemble_propagator, cos_sinc, decompose, dot, eigenvalues2, expm_traceless, Matrix2, PauliVector,
};
use crate::error::{Error, Result};
use crate::model::{DrivingSpec, PhaseClass};

/// Default classification tolerance on `c` and on `||tr M/2| − 1|`.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Tolerance on `|det M − 1|` (relative to the squared entry scale) accepted
/// by [`quasienergy`].
pub const UNIMODULAR_TOL: f64 = 1e-10;

/// Floquet quasienergy in the first zone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quasienergy {
    pub eps: Complex64,
    /// `||tr M/2| − 1|` within tolerance: the two Floquet eigenvalues coalesce.
    pub degenerate: bool,
}

/// Everything derived from one period of the drive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloquetResult {
    pub monodromy: Matrix2,
    /// `tr(M)/2 = cos(2 ε_F τ)`.
    pub trace_half: Complex64,
    pub g_plus: Complex64,
    pub g_minus: Complex64,
    pub eps_f: Complex64,
    pub c: f64,
    pub phase: PhaseClass,
}

/// `G(T) = G₋(T/2) G₊(T/2)`: the γ₊ half acts first.
pub fn monodromy(spec: &DrivingSpec) -> Matrix2 {
    let tau = spec.tau();
    let g_plus = half_step(spec.h_plus(), tau);
    let g_minus = half_step(spec.h_minus(), tau);
    g_minus * g_plus
}

#[inline]
fn half_step(h: PauliVector, tau: f64) -> Matrix2 {
    let field = h.field();
    let (cos, sinc) = cos_sinc(dot(field, field), tau);
    assemble_propagator(field, cos, sinc)
}

/// Monodromy of the passive partner, whose half-period Hamiltonians are
/// `H₊ − iγ₀𝟙` and `H₋ − i|μ|γ₀𝟙`; equal to
/// `exp(−(|μ| + 1) γ₀ T/2) · G(T)`.
pub fn passive_monodromy(spec: &DrivingSpec) -> Matrix2 {
    let loss = (spec.mu().abs() + 1.0) * spec.gamma0() * spec.period() / 2.0;
    monodromy(spec).scale_real((-loss).exp())
}

/// Quasienergy `ε_F` with `cos(2 ε_F τ) = tr(M)/2`.
///
/// `M` must be unimodular. For a real trace the result has
/// `Re ε_F ∈ [0, ω/2]` and `Im ε_F ≥ 0`; for a genuinely complex trace
/// `Im ε_F ≥ 0` is kept and `Re ε_F` is reduced to `[0, ω)`.
pub fn quasienergy(m: &Matrix2, tau: f64, tol: f64) -> Result<Quasienergy> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::param("tau", tau, "half period must be positive"));
    }
    let det = m.det();
    let deviation = (det - 1.0).norm();
    let scale = m.max_abs().powi(2).max(1.0);
    if !(deviation <= UNIMODULAR_TOL * scale) {
        return Err(Error::NotUnimodular {
            det: format!("{det}"),
            deviation,
        });
    }
    let h = m.trace() * 0.5;
    Ok(Quasienergy {
        eps: quasienergy_from_trace_half(h, tau),
        degenerate: (h.norm() - 1.0).abs() <= tol,
    })
}

/// Solve `cos θ = h` for θ = 2 ε_F τ with the zone convention of
/// [`quasienergy`].
pub(crate) fn quasienergy_from_trace_half(h: Complex64, tau: f64) -> Complex64 {
    let theta = if h.im == 0.0 {
        let x = h.re;
        if x.abs() <= 1.0 {
            Complex64::new(x.acos(), 0.0)
        } else if x > 1.0 {
            Complex64::new(0.0, x.acosh())
        } else if x < -1.0 {
            Complex64::new(PI, (-x).acosh())
        } else {
            Complex64::new(f64::NAN, f64::NAN)
        }
    } else {
        // θ = i·acosh(h); the principal acosh has Re ≥ 0, hence Im θ ≥ 0.
        let a = acosh_complex(h);
        let t = Complex64::new(-a.im, a.re);
        if t.re < 0.0 {
            t + TAU
        } else {
            t
        }
    };
    theta / (2.0 * tau)
}

fn acosh_complex(h: Complex64) -> Complex64 {
    if h.norm() > 1e150 {
        (h * 2.0).ln()
    } else {
        (h + (h - 1.0).sqrt() * (h + 1.0).sqrt()).ln()
    }
}

/// Normalized amplification rate `c = (|g₊| − |g₋|)/(|g₊| + |g₋|)`.
///
/// Invariant under `M → λM` for any nonzero λ.
pub fn amplification_rate(m: &Matrix2) -> f64 {
    let (gp, gm) = eigenvalues2(m);
    rate_from_eigenvalues(gp, gm)
}

#[inline]
fn rate_from_eigenvalues(gp: Complex64, gm: Complex64) -> f64 {
    let (a, b) = (gp.norm(), gm.norm());
    if a + b == 0.0 {
        return 0.0;
    }
    if a.is_infinite() {
        return if b.is_infinite() { f64::NAN } else { 1.0 };
    }
    (a - b) / (a + b)
}

/// Phase rule shared by [`classify`] and anything that re-derives a phase
/// from `(c, tr M/2)`.
pub fn phase_of(c: f64, trace_half: Complex64, tol: f64) -> PhaseClass {
    if c <= tol {
        PhaseClass::Unbroken
    } else if (trace_half.norm() - 1.0).abs() <= tol {
        PhaseClass::Exceptional
    } else {
        PhaseClass::Broken
    }
}

/// Monodromy, spectrum, quasienergy, amplification rate and PT phase.
///
/// `Unbroken` iff `c ≤ tol`; otherwise `Exceptional` when the eigenvalues are
/// within `tol` of coalescing (`||tr M/2| − 1| ≤ tol`) and `Broken` if not.
///
/// The monodromy of an active drive has unit determinant, so its eigenvalues
/// are taken from the trace alone ([`unimodular_eigenvalues`]). Rounding then
/// enters through `tr M` only, whose error grows like `max|M|` rather than the
/// `max|M|²` of the general quadratic.
pub fn classify(spec: &DrivingSpec, tol: f64) -> FloquetResult {
    let m = monodromy(spec);
    let trace_half = m.trace() * 0.5;
    let (g_plus, g_minus) = unimodular_eigenvalues(trace_half);
    assemble(m, trace_half, g_plus, g_minus, spec.tau(), tol)
}

/// [`classify`] for an arbitrary monodromy (no unit-determinant assumption),
/// e.g. the passive one.
pub fn classify_matrix(monodromy: Matrix2, tau: f64, tol: f64) -> FloquetResult {
    let (g_plus, g_minus) = eigenvalues2(&monodromy);
    assemble(monodromy, monodromy.trace() * 0.5, g_plus, g_minus, tau, tol)
}

fn assemble(
    monodromy: Matrix2,
    trace_half: Complex64,
    g_plus: Complex64,
    g_minus: Complex64,
    tau: f64,
    tol: f64,
) -> FloquetResult {
    let c = rate_from_eigenvalues(g_plus, g_minus);
    FloquetResult {
        monodromy,
        trace_half,
        g_plus,
        g_minus,
        eps_f: quasienergy_from_trace_half(trace_half, tau),
        c,
        phase: phase_of(c, trace_half, tol),
    }
}

/// Roots of `λ² − 2hλ + 1`: the spectrum of a unimodular 2×2 matrix with
/// `tr/2 = h`, ordered as in [`eigenvalues2`].
pub fn unimodular_eigenvalues(h: Complex64) -> (Complex64, Complex64) {
    if h.im == 0.0 && h.re.abs() <= 1.0 {
        let x = h.re;
        let s = ((1.0 - x) * (1.0 + x)).sqrt();
        return (Complex64::new(x, s), Complex64::new(x, -s));
    }
    let root = if h.norm() > 1e150 {
        h
    } else {
        (h - 1.0).sqrt() * (h + 1.0).sqrt()
    };
    let g = if (h.conj() * root).re >= 0.0 {
        h + root
    } else {
        h - root
    };
    let k = g.norm();
    let inv = g.conj() / k / k;
    if inv.norm() > g.norm() {
        (inv, g)
    } else {
        (g, inv)
    }
}

/// Effective Floquet Hamiltonian `H_F = (i/T) log G(T)` on the principal
/// branch, returned as its Pauli coordinates.
///
/// Writes `G = cos θ 𝟙 − i sin θ (n̂·σ⃗)` with `θ = ε_F T`, so
/// `H_F = (θ / T) n̂·σ⃗ + (i/T) log(√det) 𝟙`.
pub fn effective_hamiltonian(m: &Matrix2, period: f64) -> PauliVector {
    let p = decompose(m);
    // Remove a possible scalar factor (passive systems) first.
    let root_det = m.det().sqrt();
    let a0 = p.a0 / root_det;
    let field = [p.a1 / root_det, p.a2 / root_det, p.a3 / root_det];
    // sin θ n̂ = i·field, sin²θ = −field·field
    let theta = a0.acos();
    let sin = theta.sin();
    let ratio = if sin.norm() < 1e-12 {
        Complex64::new(1.0, 0.0)
    } else {
        theta / sin
    };
    let k = Complex64::i() * ratio / period;
    let log_scale = Complex64::i() * root_det.ln() / period;
    PauliVector::new(log_scale, k * field[0], k * field[1], k * field[2])
}

/// Half-step propagators `(G₊(τ), G₋(τ))`.
pub fn half_period_propagators(spec: &DrivingSpec) -> (Matrix2, Matrix2) {
    let tau = spec.tau();
    (
        expm_traceless(spec.h_plus().field(), tau),
        expm_traceless(spec.h_minus().field(), tau),
    )
}
