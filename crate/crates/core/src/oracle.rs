//! Brute-force time-ordered propagator, kept apart from the production path
//! and used only to validate it.
//!
//! The period is cut into `2·steps_per_half` equal sub-intervals whose edges
//! include the switching time T/2, the instantaneous Hamiltonian is sampled
//! at each sub-interval midpoint and the sub-interval propagators are
//! multiplied left to right in time order. For a piecewise-constant drive this
//! is exact up to rounding for any step count.

use crate::complex2::{expm_traceless, Matrix2, PauliVector};
use crate::error::{Error, Result};
use crate::model::DrivingSpec;

/// Instantaneous Hamiltonian `H(t)` of the two-step drive, `t` taken modulo
/// the period.
pub fn hamiltonian_at(spec: &DrivingSpec, t: f64) -> PauliVector {
    let period = spec.period();
    let phase = t.rem_euclid(period);
    if phase < period / 2.0 {
        spec.h_plus()
    } else {
        spec.h_minus()
    }
}

/// Time-ordered product `T exp(−i∫₀ᵀ H(t) dt)` over `2·steps_per_half`
/// sub-intervals.
pub fn stepped_propagator(spec: &DrivingSpec, steps_per_half: usize) -> Result<Matrix2> {
    if steps_per_half == 0 {
        return Err(Error::param("steps_per_half", 0.0, "need at least one step"));
    }
    let tau = spec.tau();
    let dt = tau / steps_per_half as f64;
    let mut acc = Matrix2::identity();
    for half in 0..2 {
        let start = half as f64 * tau;
        for k in 0..steps_per_half {
            let mid = start + (k as f64 + 0.5) * dt;
            let step = expm_traceless(hamiltonian_at(spec, mid).field(), dt);
            acc = step * acc;
        }
    }
    Ok(acc)
}
