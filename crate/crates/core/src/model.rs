//! Static PT dimer Hamiltonians and the two-step driving protocol.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::complex2::PauliVector;
use crate::error::{Error, Result};

/// Static PT-symmetric dimer `H = -J σx + i γ σz` (gain on site 1, loss on
/// site 2 for γ > 0).
pub fn h_pt(coupling: f64, gamma: f64) -> Result<PauliVector> {
    if !(coupling > 0.0 && coupling.is_finite()) {
        return Err(Error::param("J", coupling, "coupling must be positive and finite"));
    }
    if !gamma.is_finite() {
        return Err(Error::param("gamma", gamma, "gain/loss must be finite"));
    }
    Ok(pt_field(coupling, gamma))
}

/// Unchecked [`h_pt`] for already validated parameters.
#[inline]
pub(crate) fn pt_field(coupling: f64, gamma: f64) -> PauliVector {
    PauliVector::from_field([
        Complex64::new(-coupling, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, gamma),
    ])
}

/// `E± = ±√(J² − γ²)` with the principal root, so `E₊` is real and
/// non-negative below the exceptional point and `+i√(γ² − J²)` above it.
pub fn static_eigs(coupling: f64, gamma: f64) -> (Complex64, Complex64) {
    let e = Complex64::new(coupling * coupling - gamma * gamma, 0.0).sqrt();
    (e, -e)
}

/// `|⟨+|−⟩| = min(γ/J, J/γ)` for the normalized eigenstates of [`h_pt`].
pub fn eigenstate_overlap(coupling: f64, gamma: f64) -> Result<f64> {
    if !(coupling > 0.0 && coupling.is_finite()) {
        return Err(Error::param("J", coupling, "coupling must be positive and finite"));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::param("gamma", gamma, "overlap is defined for gamma > 0"));
    }
    Ok((gamma / coupling).min(coupling / gamma))
}

/// Gain/loss strengths of the two half periods in the (γ̄, δ) parameterization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeltaDriving {
    pub gamma_plus: f64,
    pub gamma_minus: f64,
    pub mu: f64,
}

/// `γ± = γ̄(1 ± δ)` and `μ = (1 − δ)/(1 + δ)`.
pub fn driving_from_delta(gamma_bar: f64, delta: f64) -> DeltaDriving {
    DeltaDriving {
        gamma_plus: gamma_bar * (1.0 + delta),
        gamma_minus: gamma_bar * (1.0 - delta),
        mu: (1.0 - delta) / (1.0 + delta),
    }
}

/// Turn an active Hamiltonian into its passive (loss-only) partner
/// `H − i γ_shift 𝟙`.
pub fn passive_shift(h: PauliVector, gamma_shift: f64) -> PauliVector {
    PauliVector {
        a0: h.a0 - Complex64::new(0.0, gamma_shift),
        ..h
    }
}

/// Two-step drive: `H₊ = H_PT(γ₀)` for `0 ≤ t < T/2`, then `H₋ = H_PT(μγ₀)`
/// for `T/2 ≤ t < T`, with `T = 2π/ω`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DrivingSpec {
    coupling: f64,
    gamma0: f64,
    mu: f64,
    omega: f64,
}

impl DrivingSpec {
    pub fn new(coupling: f64, gamma0: f64, mu: f64, omega: f64) -> Result<Self> {
        if !(coupling > 0.0 && coupling.is_finite()) {
            return Err(Error::param("J", coupling, "coupling must be positive and finite"));
        }
        if !(gamma0 >= 0.0 && gamma0.is_finite()) {
            return Err(Error::param("gamma0", gamma0, "gain/loss must be finite and >= 0"));
        }
        if !(-1.0..=1.0).contains(&mu) {
            return Err(Error::param("mu", mu, "mu must lie in [-1, 1]"));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::param("omega", omega, "frequency must be positive and finite"));
        }
        Ok(DrivingSpec {
            coupling,
            gamma0,
            mu,
            omega,
        })
    }

    /// Spec from the (γ̄, δ) parameterization with `γ₀ = γ₊`.
    pub fn from_delta(coupling: f64, gamma_bar: f64, delta: f64, omega: f64) -> Result<Self> {
        if !(gamma_bar > 0.0) {
            return Err(Error::param("gamma_bar", gamma_bar, "mean gain/loss must be positive"));
        }
        if !(delta >= 0.0) {
            return Err(Error::param("delta", delta, "delta must be >= 0"));
        }
        let d = driving_from_delta(gamma_bar, delta);
        Self::new(coupling, d.gamma_plus, d.mu, omega)
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn gamma0(&self) -> f64 {
        self.gamma0
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Half period τ = π/ω.
    pub fn tau(&self) -> f64 {
        PI / self.omega
    }

    pub fn period(&self) -> f64 {
        2.0 * self.tau()
    }

    pub fn gamma_plus(&self) -> f64 {
        self.gamma0
    }

    pub fn gamma_minus(&self) -> f64 {
        self.mu * self.gamma0
    }

    /// δ = (1 − μ)/(1 + μ); infinite at μ = −1.
    pub fn delta(&self) -> f64 {
        if self.mu == -1.0 {
            f64::INFINITY
        } else {
            (1.0 - self.mu) / (1.0 + self.mu)
        }
    }

    pub fn h_plus(&self) -> PauliVector {
        pt_field(self.coupling, self.gamma_plus())
    }

    pub fn h_minus(&self) -> PauliVector {
        pt_field(self.coupling, self.gamma_minus())
    }

    pub fn with_gamma0(&self, gamma0: f64) -> Result<Self> {
        Self::new(self.coupling, gamma0, self.mu, self.omega)
    }

    pub fn with_omega(&self, omega: f64) -> Result<Self> {
        Self::new(self.coupling, self.gamma0, self.mu, omega)
    }

    pub fn with_mu(&self, mu: f64) -> Result<Self> {
        Self::new(self.coupling, self.gamma0, mu, self.omega)
    }
}

/// PT phase of a driven system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseClass {
    Unbroken,
    Broken,
    Exceptional,
}

impl PhaseClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PhaseClass::Unbroken => "Unbroken",
            PhaseClass::Broken => "Broken",
            PhaseClass::Exceptional => "Exceptional",
        }
    }
}

impl fmt::Display for PhaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PhaseClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "Unbroken" => Ok(PhaseClass::Unbroken),
            "Broken" => Ok(PhaseClass::Broken),
            "Exceptional" => Ok(PhaseClass::Exceptional),
            other => Err(format!("unknown phase class `{other}`")),
        }
    }
}
