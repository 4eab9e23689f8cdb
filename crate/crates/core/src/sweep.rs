//! Grid sweeps over (γ₀/J, ω/J) and one-dimensional threshold scans.
//!
//! Every grid node is an independent [`classify`] call whose result is written
//! to a pre-assigned slot, so output does not depend on how (or whether) the
//! work is spread over threads.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::floquet::{classify, FloquetResult};
use crate::model::{DrivingSpec, PhaseClass};

/// `count` evenly spaced nodes from `lo` to `hi` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

impl AxisRange {
    pub fn new(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::param("count", count as f64, "an axis needs at least 2 nodes"));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::param("hi", hi, "axis range must satisfy lo < hi"));
        }
        Ok(AxisRange { lo, hi, count })
    }

    /// Node `k`, computed as `lo + k·(hi − lo)/(count − 1)` (never by
    /// accumulation); the last node is exactly `hi`.
    #[inline]
    pub fn node(&self, k: usize) -> f64 {
        if k + 1 == self.count {
            self.hi
        } else {
            self.lo + k as f64 * (self.hi - self.lo) / (self.count - 1) as f64
        }
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.node(k)).collect()
    }
}

/// How cell evaluations are scheduled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    /// Plain loop on the calling thread.
    Sequential,
    /// A dedicated pool with this many workers.
    Threads(usize),
    /// The global rayon pool.
    #[default]
    Auto,
}

impl Parallelism {
    /// `None`/0 → [`Parallelism::Auto`], 1 → sequential, n → n workers.
    pub fn from_worker_count(n: Option<usize>) -> Self {
        match n {
            None | Some(0) => Parallelism::Auto,
            Some(1) => Parallelism::Sequential,
            Some(n) => Parallelism::Threads(n),
        }
    }
}

/// Classification of every node of a (γ₀, ω) grid, stored γ₀-major.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGrid {
    pub gamma_axis: Vec<f64>,
    pub omega_axis: Vec<f64>,
    pub mu: f64,
    pub coupling: f64,
    pub tol: f64,
    pub c_values: Vec<f64>,
    pub classes: Vec<PhaseClass>,
    /// Real part of `tr(M)/2` per node.
    pub trace_half: Vec<f64>,
}

impl PhaseGrid {
    pub fn rows(&self) -> usize {
        self.gamma_axis.len()
    }

    pub fn cols(&self) -> usize {
        self.omega_axis.len()
    }

    #[inline]
    pub fn index(&self, gamma_idx: usize, omega_idx: usize) -> usize {
        gamma_idx * self.cols() + omega_idx
    }

    pub fn c(&self, gamma_idx: usize, omega_idx: usize) -> f64 {
        self.c_values[self.index(gamma_idx, omega_idx)]
    }

    pub fn class(&self, gamma_idx: usize, omega_idx: usize) -> PhaseClass {
        self.classes[self.index(gamma_idx, omega_idx)]
    }

    pub fn count(&self, class: PhaseClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }

    /// Iterate `(gamma0, omega, c, class, trace_half)` in storage order.
    pub fn cells(&self) -> impl Iterator<Item = (f64, f64, f64, PhaseClass, f64)> + '_ {
        let cols = self.cols();
        (0..self.c_values.len()).map(move |i| {
            (
                self.gamma_axis[i / cols],
                self.omega_axis[i % cols],
                self.c_values[i],
                self.classes[i],
                self.trace_half[i],
            )
        })
    }
}

/// Classify every node of the grid spanned by `gamma` × `omega`.
pub fn sweep_grid(mu: f64, coupling: f64, gamma: AxisRange, omega: AxisRange, tol: f64) -> Result<PhaseGrid> {
    sweep_grid_with(mu, coupling, gamma, omega, tol, Parallelism::Auto)
}

pub fn sweep_grid_with(
    mu: f64,
    coupling: f64,
    gamma: AxisRange,
    omega: AxisRange,
    tol: f64,
    parallelism: Parallelism,
) -> Result<PhaseGrid> {
    if !(tol > 0.0) {
        return Err(Error::param("tol", tol, "tolerance must be positive"));
    }
    let gamma_axis = gamma.nodes();
    let omega_axis = omega.nodes();
    let mut specs = Vec::with_capacity(gamma_axis.len() * omega_axis.len());
    for &g in &gamma_axis {
        for &w in &omega_axis {
            specs.push(DrivingSpec::new(coupling, g, mu, w)?);
        }
    }

    let eval = |s: &DrivingSpec| summarize(&classify(s, tol));
    let cells: Vec<(f64, PhaseClass, f64)> = match parallelism {
        Parallelism::Sequential => specs.iter().map(eval).collect(),
        Parallelism::Auto => specs.par_iter().map(eval).collect(),
        Parallelism::Threads(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Pool(e.to_string()))?;
            pool.install(|| specs.par_iter().map(eval).collect())
        }
    };

    let mut c_values = Vec::with_capacity(cells.len());
    let mut classes = Vec::with_capacity(cells.len());
    let mut trace_half = Vec::with_capacity(cells.len());
    for (c, class, h) in cells {
        c_values.push(c);
        classes.push(class);
        trace_half.push(h);
    }
    Ok(PhaseGrid {
        gamma_axis,
        omega_axis,
        mu,
        coupling,
        tol,
        c_values,
        classes,
        trace_half,
    })
}

#[inline]
fn summarize(r: &FloquetResult) -> (f64, PhaseClass, f64) {
    (r.c, r.phase, r.trace_half.re)
}

/// Past the transition: `Broken` or `Exceptional`.
fn is_broken(spec: &DrivingSpec, tol: f64) -> bool {
    classify(spec, tol).phase != PhaseClass::Unbroken
}

fn bisect<F>(mut lo: f64, mut hi: f64, width: f64, mut broken_at: F) -> f64
where
    F: FnMut(f64) -> bool,
{
    let lo_broken = broken_at(lo);
    while (hi - lo).abs() > width {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if broken_at(mid) == lo_broken {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Critical γ₀ at fixed ω, by bisection until the bracket is narrower than
/// `width`.
///
/// `gamma_hint.0` must classify as `Unbroken` and `gamma_hint.1` as `Broken`.
/// Inside the bracket the transition should be unique (re-entrant slivers
/// are not detected).
pub fn threshold_scan(mu: f64, coupling: f64, omega: f64, gamma_hint: (f64, f64), width: f64, tol: f64) -> Result<f64> {
    let (lo, hi) = gamma_hint;
    if !(width > 0.0) {
        return Err(Error::param("width", width, "bracket width must be positive"));
    }
    if !(lo < hi) {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            reason: "need lo < hi".into(),
        });
    }
    let base = DrivingSpec::new(coupling, lo, mu, omega)?;
    let hi_spec = base.with_gamma0(hi)?;
    let lo_phase = classify(&base, tol).phase;
    let hi_phase = classify(&hi_spec, tol).phase;
    if lo_phase != PhaseClass::Unbroken || hi_phase != PhaseClass::Broken {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            reason: format!("endpoints classify as {lo_phase} and {hi_phase}, need Unbroken and Broken"),
        });
    }
    Ok(bisect(lo, hi, width, |g| {
        is_broken(&DrivingSpec::new(coupling, g, mu, omega).expect("validated"), tol)
    }))
}

/// Critical ω at fixed γ₀, by bisection. The two ends of `omega_hint` must lie
/// on opposite sides of the `Unbroken` boundary (either orientation).
pub fn frequency_scan(
    mu: f64,
    coupling: f64,
    gamma0: f64,
    omega_hint: (f64, f64),
    width: f64,
    tol: f64,
) -> Result<f64> {
    let (lo, hi) = omega_hint;
    if !(width > 0.0) {
        return Err(Error::param("width", width, "bracket width must be positive"));
    }
    if !(lo < hi) {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            reason: "need lo < hi".into(),
        });
    }
    let lo_spec = DrivingSpec::new(coupling, gamma0, mu, lo)?;
    let hi_spec = lo_spec.with_omega(hi)?;
    if is_broken(&lo_spec, tol) == is_broken(&hi_spec, tol) {
        return Err(Error::InvalidBracket {
            lo,
            hi,
            reason: "both ends are on the same side of the broken region".into(),
        });
    }
    Ok(bisect(lo, hi, width, |w| {
        is_broken(&DrivingSpec::new(coupling, gamma0, mu, w).expect("validated"), tol)
    }))
}
