//! Closed-form expressions for the two-step drive.
//!
//! With `r₁ = √(J² − γ₀²)` and `r₂ = √(J² − μ²γ₀²)` the monodromy is
//!
//! ```text
//! cos(2ε_F τ) = cos(r₂τ)cos(r₁τ) − (J² − μγ₀²)/(r₁r₂) · sin(r₂τ)sin(r₁τ)
//! a_x = J/r₁ cos(r₂τ)sin(r₁τ) + J/r₂ sin(r₂τ)cos(r₁τ)
//! a_y = (μ − 1) Jγ₀/(r₁r₂) sin(r₂τ)sin(r₁τ)
//! a_z = γ₀/r₁ cos(r₂τ)sin(r₁τ) + μγ₀/r₂ sin(r₂τ)cos(r₁τ)
//! ```
//!
//! Every `sin(rτ)/r` is evaluated as a unit through [`cos_sinc`], so nothing
//! divides by zero when either half step sits on its exceptional point. All
//! expressions are even in `r₁` and `r₂`; the square-root branch does not
//! matter.
//!
//! The phase-boundary families live here too: the ellipses for μ = −1, the
//! large-γ₀ boundary for μ = −1 and the unbroken slivers for μ = 0.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::complex2::{compose, cos_sinc, Matrix2};
use crate::error::{Error, Result};
use crate::model::DrivingSpec;

/// Imaginary residue (relative to the size of the summed terms) above which
/// an analytic result is reported as inconsistent.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// Trace and field components of the monodromy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldComponents {
    pub ax: f64,
    pub ay: f64,
    pub az: f64,
    pub cos2eps: f64,
}

impl FieldComponents {
    /// `cos² + a_x² − a_y² − a_z²`, the determinant of the monodromy.
    pub fn determinant(&self) -> f64 {
        self.cos2eps * self.cos2eps + self.ax * self.ax - self.ay * self.ay - self.az * self.az
    }

    /// Rebuild the monodromy `G₋(τ)G₊(τ)` from the components.
    ///
    /// With `r⃗₁ = (−J, 0, iγ₀)` the product expands to
    /// `cos 𝟙 + i a_x σx − a_y σy + a_z σz`.
    pub fn monodromy(&self) -> Matrix2 {
        compose(
            Complex64::new(self.cos2eps, 0.0),
            Complex64::new(0.0, self.ax),
            Complex64::new(-self.ay, 0.0),
            Complex64::new(self.az, 0.0),
        )
    }
}

struct HalfSteps {
    c1: Complex64,
    s1: Complex64,
    c2: Complex64,
    s2: Complex64,
}

fn half_steps(spec: &DrivingSpec) -> HalfSteps {
    let j = spec.coupling();
    let g = spec.gamma0();
    let mu = spec.mu();
    let tau = spec.tau();
    let r1_sq = Complex64::new(j * j - g * g, 0.0);
    let r2_sq = Complex64::new(j * j - mu * mu * g * g, 0.0);
    let (c1, s1) = cos_sinc(r1_sq, tau);
    let (c2, s2) = cos_sinc(r2_sq, tau);
    HalfSteps { c1, s1, c2, s2 }
}

fn real_part(z: Complex64, scale: f64, what: &str) -> Result<f64> {
    if !z.is_finite() {
        return Err(Error::Consistency(format!("{what} is not finite ({z})")));
    }
    if z.im.abs() > IMAG_RESIDUE_TOL * scale.max(1.0) {
        return Err(Error::Consistency(format!("{what} has imaginary residue {:e}", z.im)));
    }
    Ok(z.re)
}

/// `cos(2 ε_F τ)`, equal to `tr(G(T))/2`.
pub fn cos_2eps_tau(spec: &DrivingSpec) -> Result<f64> {
    let j = spec.coupling();
    let g = spec.gamma0();
    let hs = half_steps(spec);
    let coupling_term = (j * j - spec.mu() * g * g) * hs.s2 * hs.s1;
    let v = hs.c2 * hs.c1 - coupling_term;
    let scale = (hs.c2 * hs.c1).norm() + coupling_term.norm();
    real_part(v, scale, "cos(2 eps tau)")
}

/// μ = 0 specialization `cos(r₁τ)cos(Jτ) − (J/r₁) sin(r₁τ) sin(Jτ)`.
pub fn cos_2eps_tau_mu0(coupling: f64, gamma0: f64, omega: f64) -> Result<f64> {
    let tau = PI / omega;
    let (c1, s1) = cos_sinc(Complex64::new(coupling * coupling - gamma0 * gamma0, 0.0), tau);
    let jt = coupling * tau;
    let a = c1 * jt.cos();
    let b = s1 * (coupling * jt.sin());
    real_part(a - b, a.norm() + b.norm(), "cos(2 eps tau)")
}

/// μ = −1 specialization `cos²(r₁τ) − (J² + γ₀²)/(J² − γ₀²) sin²(r₁τ)`.
pub fn cos_2eps_tau_mu_minus1(coupling: f64, gamma0: f64, omega: f64) -> Result<f64> {
    let tau = PI / omega;
    let (c1, s1) = cos_sinc(Complex64::new(coupling * coupling - gamma0 * gamma0, 0.0), tau);
    let a = c1 * c1;
    let b = s1 * s1 * (coupling * coupling + gamma0 * gamma0);
    real_part(a - b, a.norm() + b.norm(), "cos(2 eps tau)")
}

/// `(a_x, a_y, a_z)` and `cos(2ε_Fτ)`.
pub fn field_components(spec: &DrivingSpec) -> Result<FieldComponents> {
    let j = spec.coupling();
    let g = spec.gamma0();
    let mu = spec.mu();
    let HalfSteps { c1, s1, c2, s2 } = half_steps(spec);
    let cross = s2 * s1;
    let ax = (c2 * s1 + s2 * c1) * j;
    let ay = cross * ((mu - 1.0) * j * g);
    let az = c2 * s1 * g + s2 * c1 * (mu * g);
    let scale = (c2 * c1).norm() + ((j * j - mu * g * g) * cross).norm() + ax.norm() + ay.norm() + az.norm();
    Ok(FieldComponents {
        ax: real_part(ax, scale, "a_x")?,
        ay: real_part(ay, scale, "a_y")?,
        az: real_part(az, scale, "a_z")?,
        cos2eps: cos_2eps_tau(spec)?,
    })
}

/// Effective static threshold `γ∞ = 2J/|1 + μ|` of the high-frequency limit
/// (infinite at μ = −1).
pub fn high_freq_threshold(mu: f64, coupling: f64) -> f64 {
    let d = (1.0 + mu).abs();
    if d == 0.0 {
        f64::INFINITY
    } else {
        2.0 * coupling / d
    }
}

/// μ = −1 phase criterion `|sin(r₁τ)| ≤ |r₁|/J`, evaluated as
/// `J·|sin(r₁τ)/r₁| ≤ 1` so it stays valid at `r₁ = 0`.
pub fn mu_minus1_unbroken(spec: &DrivingSpec) -> Result<bool> {
    if spec.mu() != -1.0 {
        return Err(Error::param("mu", spec.mu(), "criterion only holds for mu = -1"));
    }
    let j = spec.coupling();
    let g = spec.gamma0();
    let (_, s1) = cos_sinc(Complex64::new(j * j - g * g, 0.0), spec.tau());
    Ok(j * s1.norm() <= 1.0)
}

/// Large-γ boundary of the μ = −1 phase diagram, `ω = πγ / asinh(γ/J)`.
pub fn asymptotic_boundary(gamma: f64, coupling: f64) -> Result<f64> {
    check_coupling(coupling)?;
    if !(gamma > coupling && gamma.is_finite()) {
        return Err(Error::param("gamma", gamma, "boundary is defined for gamma > J"));
    }
    Ok(PI * gamma / (gamma / coupling).asinh())
}

/// Leading-log form `πγ / log(2γ/J)` of [`asymptotic_boundary`].
pub fn asymptotic_boundary_log(gamma: f64, coupling: f64) -> f64 {
    PI * gamma / (2.0 * gamma / coupling).ln()
}

/// Which analytic family a [`BoundaryCurve`] traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryFamily {
    /// `γ₀² + n²ω² = J²` (μ = −1, unbroken).
    UnbrokenEllipse(u32),
    /// `γ₀² + (n + ½)²ω² = J²` (μ = −1, broken).
    BrokenEllipse(u32),
    /// `ω = πγ₀/asinh(γ₀/J)` (μ = −1).
    AsymptoticBoundary,
    /// `cot(Jτ) = J/√(γ₀² − J²)` near `ω = 2J/n` (μ = 0, unbroken).
    Mu0Sliver(u32),
}

/// Points `(γ₀, ω)` along one analytic boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryCurve {
    pub family: BoundaryFamily,
    pub coupling: f64,
    pub points: Vec<(f64, f64)>,
}

impl BoundaryCurve {
    /// Residual of the defining equation at `(γ₀, ω)`, normalized to be
    /// dimensionless.
    pub fn residual(&self, gamma0: f64, omega: f64) -> f64 {
        let j = self.coupling;
        match self.family {
            BoundaryFamily::UnbrokenEllipse(n) => {
                let n = f64::from(n);
                (gamma0 * gamma0 + n * n * omega * omega - j * j) / (j * j)
            }
            BoundaryFamily::BrokenEllipse(n) => {
                let k = f64::from(n) + 0.5;
                (gamma0 * gamma0 + k * k * omega * omega - j * j) / (j * j)
            }
            BoundaryFamily::AsymptoticBoundary => omega / (PI * gamma0 / (gamma0 / j).asinh()) - 1.0,
            BoundaryFamily::Mu0Sliver(_) => {
                let q = (gamma0 * gamma0 - j * j).sqrt();
                let jt = j * PI / omega;
                (q * jt.cos() - j * jt.sin()) / (q * q + j * j).sqrt()
            }
        }
    }

    pub fn max_residual(&self) -> f64 {
        self.points
            .iter()
            .map(|&(g, w)| self.residual(g, w).abs())
            .fold(0.0, f64::max)
    }
}

fn check_coupling(coupling: f64) -> Result<()> {
    if coupling > 0.0 && coupling.is_finite() {
        Ok(())
    } else {
        Err(Error::param("J", coupling, "coupling must be positive and finite"))
    }
}

fn check_samples(samples: usize) -> Result<()> {
    if samples == 0 {
        Err(Error::param("samples", 0.0, "need at least one sample"))
    } else {
        Ok(())
    }
}

fn ellipse(family: BoundaryFamily, order: f64, coupling: f64, samples: usize) -> BoundaryCurve {
    let points = (0..samples)
        .map(|k| {
            let g = coupling * k as f64 / samples as f64;
            (g, (coupling * coupling - g * g).sqrt() / order)
        })
        .collect();
    BoundaryCurve {
        family,
        coupling,
        points,
    }
}

/// `samples` points of `γ₀² + n²ω² = J²` with `γ₀ = kJ/samples ∈ [0, J)`.
/// Along it `r₁τ = nπ`.
pub fn unbroken_ellipse(n: u32, coupling: f64, samples: usize) -> Result<BoundaryCurve> {
    check_coupling(coupling)?;
    check_samples(samples)?;
    if n == 0 {
        return Err(Error::param("n", 0.0, "unbroken ellipse order must be >= 1"));
    }
    Ok(ellipse(
        BoundaryFamily::UnbrokenEllipse(n),
        f64::from(n),
        coupling,
        samples,
    ))
}

/// `samples` points of `γ₀² + (n + ½)²ω² = J²` with `γ₀ ∈ [0, J)`.
/// Along it `r₁τ = (n + ½)π`.
pub fn broken_ellipse(n: u32, coupling: f64, samples: usize) -> Result<BoundaryCurve> {
    check_coupling(coupling)?;
    check_samples(samples)?;
    Ok(ellipse(
        BoundaryFamily::BrokenEllipse(n),
        f64::from(n) + 0.5,
        coupling,
        samples,
    ))
}

/// `samples` points of [`asymptotic_boundary`] for γ evenly spaced over
/// `[gamma_min, gamma_max]`.
pub fn asymptotic_curve(coupling: f64, gamma_min: f64, gamma_max: f64, samples: usize) -> Result<BoundaryCurve> {
    check_coupling(coupling)?;
    check_samples(samples)?;
    if !(gamma_max >= gamma_min) {
        return Err(Error::param("gamma_max", gamma_max, "must not be below gamma_min"));
    }
    let points = (0..samples)
        .map(|k| {
            let g = if samples == 1 {
                gamma_min
            } else {
                gamma_min + k as f64 * (gamma_max - gamma_min) / (samples - 1) as f64
            };
            asymptotic_boundary(g, coupling).map(|w| (g, w))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryCurve {
        family: BoundaryFamily::AsymptoticBoundary,
        coupling,
        points,
    })
}

/// Centre of the μ = 0 unbroken sliver of odd order `n` at `γ₀ > J`.
///
/// Solves `cot(Jτ) = J/q`, `q = √(γ₀² − J²)`, in the pole-free form
/// `q cos(Jτ) − J sin(Jτ) = 0` by bisection on
/// `Jτ ∈ ((n − 1)π/2, (n + 1)π/2)` and returns `ω = π/τ`. As γ₀ → ∞ this
/// tends to `ω = 2J/n`.
pub fn mu0_sliver(n: u32, gamma0: f64, coupling: f64) -> Result<f64> {
    Ok(PI / mu0_sliver_tau(n, gamma0, coupling)?)
}

/// Half period τ of [`mu0_sliver`].
pub fn mu0_sliver_tau(n: u32, gamma0: f64, coupling: f64) -> Result<f64> {
    check_coupling(coupling)?;
    if n % 2 == 0 {
        return Err(Error::param("n", f64::from(n), "sliver order must be odd"));
    }
    if !(gamma0 > coupling && gamma0.is_finite()) {
        return Err(Error::param("gamma0", gamma0, "slivers exist for gamma0 > J"));
    }
    let q = (gamma0 * gamma0 - coupling * coupling).sqrt();
    let f = |tau: f64| {
        let x = coupling * tau;
        q * x.cos() - coupling * x.sin()
    };
    let nf = f64::from(n);
    let mut lo = (nf - 1.0) * PI / (2.0 * coupling);
    let mut hi = (nf + 1.0) * PI / (2.0 * coupling);
    let (mut flo, fhi) = (f(lo), f(hi));
    if !(flo * fhi < 0.0) {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            reason: format!("no sign change in q cos(J tau) - J sin(J tau) ({flo:e}, {fhi:e})"),
        });
    }
    loop {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(if f(lo).abs() <= f(hi).abs() { lo } else { hi })
}

/// [`mu0_sliver`] sampled at `samples` values of γ₀ evenly spaced over
/// `(J, gamma_max]` (the endpoint `J` itself is excluded).
pub fn mu0_sliver_curve(n: u32, coupling: f64, gamma_max: f64, samples: usize) -> Result<BoundaryCurve> {
    check_coupling(coupling)?;
    check_samples(samples)?;
    if !(gamma_max > coupling) {
        return Err(Error::param("gamma_max", gamma_max, "must exceed J"));
    }
    let points = (1..=samples)
        .map(|k| {
            let g = coupling + (gamma_max - coupling) * k as f64 / samples as f64;
            mu0_sliver(n, g, coupling).map(|w| (g, w))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundaryCurve {
        family: BoundaryFamily::Mu0Sliver(n),
        coupling,
        points,
    })
}
