//! Floquet analysis of a PT-symmetric dimer whose gain/loss is switched
//! between two values every half period.
//!
//! The crate is organised bottom-up:
//!
//! * [`complex2`]: 2×2 complex matrices in the Pauli basis and the closed-form
//!   exponential of a traceless generator.
//! * [`model`]: static PT Hamiltonians, the two-step [`DrivingSpec`] and the
//!   active/passive translation.
//! * [`floquet`]: monodromy operator, quasienergy, amplification rate and phase
//!   classification.
//! * [`analytic`]: closed-form trace and field components of the monodromy and
//!   the analytic phase-boundary families.
//! * [`oracle`]: brute-force time-ordered propagator used only for validation.
//! * [`sweep`]: deterministic (optionally parallel) grid and threshold scans.

pub mod analytic;
pub mod complex2;
mod error;
pub mod floquet;
pub mod model;
pub mod oracle;
pub mod sweep;

pub use num_complex::Complex64;

pub use analytic::{BoundaryCurve, BoundaryFamily, FieldComponents};
pub use complex2::{Matrix2, PauliVector};
pub use error::{Error, Result};
pub use floquet::{FloquetResult, Quasienergy, DEFAULT_TOL};
pub use model::{DrivingSpec, PhaseClass};
pub use sweep::{AxisRange, Parallelism, PhaseGrid};
