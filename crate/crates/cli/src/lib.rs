//! `pt-floquet` command-line front end.
//!
//! ```text
//! pt-floquet classify --gamma0 0.5 --mu 1 --omega 3
//! pt-floquet sweep --mu -1 --out grid.csv --ppm grid.ppm
//! pt-floquet boundary --kind unbroken-ellipse --n 2 --samples 100
//! ```
//!
//! Exit codes: 0 success, 2 usage or parameter error, 3 internal consistency
//! failure.

use std::ffi::OsString;
use std::fs::{File, OpenOptions};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pt_floquet::analytic::{asymptotic_curve, broken_ellipse, mu0_sliver_curve, unbroken_ellipse, BoundaryCurve};
use pt_floquet::floquet::{classify, classify_matrix, passive_monodromy};
use pt_floquet::sweep::sweep_grid_with;
use pt_floquet::{AxisRange, DrivingSpec, Parallelism};

pub mod csv;
pub mod ppm;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONSISTENCY: i32 = 3;

/// Worker cap for sweeps; 0 or unset means one worker per core.
pub const THREADS_ENV: &str = "PT_FLOQUET_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "pt-floquet",
    version,
    about = "Floquet PT phase diagrams of a two-step driven dimer"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a single (gamma0, mu, omega) point and print JSON.
    #[command(allow_negative_numbers = true)]
    Classify(ClassifyArgs),
    /// Classify every node of a (gamma0, omega) grid and write CSV.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Print points of an analytic phase boundary as CSV.
    #[command(allow_negative_numbers = true)]
    Boundary(BoundaryArgs),
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    /// Inter-site coupling J.
    #[arg(long = "J", default_value_t = 1.0)]
    pub coupling: f64,
    #[arg(long)]
    pub gamma0: f64,
    #[arg(long)]
    pub mu: f64,
    #[arg(long)]
    pub omega: f64,
    #[arg(long, default_value = "1e-9")]
    pub tol: f64,
    /// Also report the spectral radius of the loss-only (passive) monodromy.
    #[arg(long)]
    pub passive: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long = "J", default_value_t = 1.0)]
    pub coupling: f64,
    #[arg(long)]
    pub mu: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma_min: f64,
    #[arg(long, default_value_t = 4.0)]
    pub gamma_max: f64,
    #[arg(long, default_value_t = 400)]
    pub gamma_steps: usize,
    #[arg(long, default_value_t = 0.1)]
    pub omega_min: f64,
    #[arg(long, default_value_t = 6.0)]
    pub omega_max: f64,
    #[arg(long, default_value_t = 400)]
    pub omega_steps: usize,
    #[arg(long, default_value = "1e-9")]
    pub tol: f64,
    /// CSV output path.
    #[arg(long)]
    pub out: PathBuf,
    /// Optional binary PPM heatmap.
    #[arg(long)]
    pub ppm: Option<PathBuf>,
    /// Overwrite existing output files.
    #[arg(long)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryKind {
    UnbrokenEllipse,
    BrokenEllipse,
    Asymptotic,
    Mu0Sliver,
}

#[derive(Debug, Args)]
pub struct BoundaryArgs {
    #[arg(long = "J", default_value_t = 1.0)]
    pub coupling: f64,
    #[arg(long, value_enum)]
    pub kind: BoundaryKind,
    /// Curve order (ellipse index or odd sliver index).
    #[arg(long, default_value_t = 1)]
    pub n: i64,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    /// Lower gamma0 for `asymptotic` (defaults to 2J).
    #[arg(long)]
    pub gamma_min: Option<f64>,
    /// Upper gamma0 for `asymptotic` and `mu0-sliver` (defaults to 10J).
    #[arg(long)]
    pub gamma_max: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct ClassifyReport {
    pub gamma0: f64,
    pub mu: f64,
    pub omega: f64,
    #[serde(rename = "J")]
    pub coupling: f64,
    pub c: f64,
    pub phase: String,
    pub eps_f_re: f64,
    pub eps_f_im: f64,
    pub trace_half: f64,
    pub g_plus_abs: f64,
    pub g_minus_abs: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectral_radius: Option<f64>,
}

/// A failed command: exit code and a one-line diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn consistency(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONSISTENCY,
            message: message.into(),
        }
    }
}

impl From<pt_floquet::Error> for Failure {
    fn from(e: pt_floquet::Error) -> Self {
        match e {
            pt_floquet::Error::Consistency(_) | pt_floquet::Error::NotUnimodular { .. } => {
                Failure::consistency(e.to_string())
            }
            _ => Failure::usage(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::usage(format!("{}: {e}", path.display()))
}

/// Parse `args` (including the program name) and run the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{text}");
            } else {
                let _ = write!(stdout, "{text}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Classify(a) => cmd_classify(&a, stdout),
        Command::Sweep(a) => cmd_sweep(&a, threads_from_env()),
        Command::Boundary(a) => cmd_boundary(&a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "pt-floquet: {}", f.message);
            f.code
        }
    }
}

fn threads_from_env() -> Parallelism {
    let n = std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok());
    Parallelism::from_worker_count(n)
}

pub fn classify_report(a: &ClassifyArgs) -> Result<ClassifyReport, Failure> {
    if !(a.tol > 0.0) {
        return Err(Failure::usage(format!(
            "invalid parameter `tol` = {}: must be positive",
            a.tol
        )));
    }
    let spec = DrivingSpec::new(a.coupling, a.gamma0, a.mu, a.omega)?;
    let r = classify(&spec, a.tol);
    let m = r.monodromy;
    if !m.is_finite() {
        return Err(Failure::consistency(
            "monodromy entries exceed the f64 range; the point cannot be classified",
        ));
    }
    let im = m.trace().im.abs();
    if im > 1e-12 * m.max_abs().max(1.0) {
        return Err(Failure::consistency(format!("tr(M) has imaginary part {im:e}")));
    }
    let spectral_radius = if a.passive {
        let p = classify_matrix(passive_monodromy(&spec), spec.tau(), a.tol);
        Some(p.g_plus.norm())
    } else {
        None
    };
    Ok(ClassifyReport {
        gamma0: spec.gamma0(),
        mu: spec.mu(),
        omega: spec.omega(),
        coupling: spec.coupling(),
        c: r.c,
        phase: r.phase.to_string(),
        eps_f_re: r.eps_f.re,
        eps_f_im: r.eps_f.im,
        trace_half: r.trace_half.re,
        g_plus_abs: r.g_plus.norm(),
        g_minus_abs: r.g_minus.norm(),
        spectral_radius,
    })
}

fn cmd_classify(a: &ClassifyArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let report = classify_report(a)?;
    let json = serde_json::to_string(&report).map_err(|e| Failure::consistency(e.to_string()))?;
    writeln!(stdout, "{json}").map_err(|e| Failure::usage(e.to_string()))
}

fn create(path: &Path, force: bool) -> Result<BufWriter<File>, Failure> {
    let mut opts = OpenOptions::new();
    opts.write(true);
    if force {
        opts.create(true).truncate(true);
    } else {
        opts.create_new(true);
    }
    match opts.open(path) {
        Ok(f) => Ok(BufWriter::new(f)),
        Err(e) if e.kind() == io::ErrorKind::AlreadyExists => Err(Failure::usage(format!(
            "{} exists; pass --force to overwrite",
            path.display()
        ))),
        Err(e) => Err(io_failure(path, e)),
    }
}

pub fn cmd_sweep(a: &SweepArgs, parallelism: Parallelism) -> Result<(), Failure> {
    let gamma = AxisRange::new(a.gamma_min, a.gamma_max, a.gamma_steps)?;
    let omega = AxisRange::new(a.omega_min, a.omega_max, a.omega_steps)?;
    if a.ppm.as_deref() == Some(a.out.as_path()) {
        return Err(Failure::usage("--out and --ppm must be different files"));
    }
    // Check both targets before the (possibly long) sweep.
    for p in std::iter::once(&a.out).chain(a.ppm.iter()) {
        if !a.force && p.exists() {
            return Err(Failure::usage(format!(
                "{} exists; pass --force to overwrite",
                p.display()
            )));
        }
    }
    let grid = sweep_grid_with(a.mu, a.coupling, gamma, omega, a.tol, parallelism)?;

    let mut out = create(&a.out, a.force)?;
    csv::write_sweep(&grid, &mut out)
        .and_then(|_| out.flush())
        .map_err(|e| io_failure(&a.out, e))?;
    if let Some(path) = &a.ppm {
        let mut f = create(path, a.force)?;
        f.write_all(&ppm::encode(&grid))
            .and_then(|_| f.flush())
            .map_err(|e| io_failure(path, e))?;
    }
    Ok(())
}

pub fn boundary_curve(a: &BoundaryArgs) -> Result<BoundaryCurve, Failure> {
    let j = a.coupling;
    let order = |min: i64| -> Result<u32, Failure> {
        u32::try_from(a.n)
            .ok()
            .filter(|&n| i64::from(n) >= min)
            .ok_or_else(|| Failure::usage(format!("invalid parameter `n` = {}: must be >= {min}", a.n)))
    };
    let gamma_max = a.gamma_max.unwrap_or(10.0 * j);
    let curve = match a.kind {
        BoundaryKind::UnbrokenEllipse => unbroken_ellipse(order(1)?, j, a.samples)?,
        BoundaryKind::BrokenEllipse => broken_ellipse(order(0)?, j, a.samples)?,
        BoundaryKind::Asymptotic => asymptotic_curve(j, a.gamma_min.unwrap_or(2.0 * j), gamma_max, a.samples)?,
        BoundaryKind::Mu0Sliver => {
            let n = order(1)?;
            if n % 2 == 0 {
                return Err(Failure::usage(format!(
                    "invalid parameter `n` = {n}: mu0-sliver needs odd n"
                )));
            }
            mu0_sliver_curve(n, j, gamma_max, a.samples)?
        }
    };
    Ok(curve)
}

fn cmd_boundary(a: &BoundaryArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let curve = boundary_curve(a)?;
    let mut buf = String::from("gamma0,omega\n");
    for &(g, w) in &curve.points {
        buf.push_str(&csv::format_number(g));
        buf.push(',');
        buf.push_str(&csv::format_number(w));
        buf.push('\n');
    }
    stdout
        .write_all(buf.as_bytes())
        .map_err(|e| Failure::usage(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("pt-floquet").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_json_fields() {
        let (code, out, _) = run_args(&["classify", "--gamma0", "0.5", "--mu", "1", "--omega", "3"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        for key in [
            "gamma0",
            "mu",
            "omega",
            "J",
            "c",
            "phase",
            "eps_f_re",
            "eps_f_im",
            "trace_half",
            "g_plus_abs",
            "g_minus_abs",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert!(v.get("spectral_radius").is_none());
        assert_eq!(v["phase"], "Unbroken");
        assert_eq!(v["c"], 0.0);
    }

    #[test]
    fn default_tolerance_matches_library() {
        use clap::Parser;
        let cli = Cli::parse_from(["pt-floquet", "sweep", "--mu", "0", "--out", "x.csv"]);
        let Command::Sweep(a) = cli.command else {
            panic!("expected sweep")
        };
        assert_eq!(a.tol, pt_floquet::DEFAULT_TOL);
        let cli = Cli::parse_from(["pt-floquet", "classify", "--gamma0", "0", "--mu", "0", "--omega", "1"]);
        let Command::Classify(a) = cli.command else {
            panic!("expected classify")
        };
        assert_eq!(a.tol, pt_floquet::DEFAULT_TOL);
    }

    #[test]
    fn negative_mu_accepted() {
        let (code, out, err) = run_args(&["classify", "--gamma0", "0.05", "--mu", "-1", "--omega", "2"]);
        assert_eq!(code, 0, "{err}");
        assert!(out.contains("\"phase\":\"Broken\""));
    }

    #[test]
    fn invalid_parameters_exit_2() {
        for args in [
            &["classify", "--gamma0", "0.5", "--mu", "2", "--omega", "3"][..],
            &["classify", "--gamma0", "0.5", "--mu", "0", "--omega", "0"],
            &["classify", "--gamma0", "-1", "--mu", "0", "--omega", "1"],
            &["classify", "--gamma0", "0.5", "--mu", "0", "--omega", "1", "--J", "0"],
            &["classify", "--gamma0", "0.5", "--mu", "0", "--omega", "1", "--tol", "0"],
            &["classify", "--gamma0", "0.5"],
            &["frobnicate"],
            &["boundary", "--kind", "mu0-sliver", "--n", "2"],
            &["boundary", "--kind", "unbroken-ellipse", "--n", "0"],
            &["boundary", "--kind", "broken-ellipse", "--n", "-1"],
        ] {
            let (code, _, err) = run_args(args);
            assert_eq!(code, EXIT_USAGE, "{args:?}");
            assert!(!err.is_empty());
        }
    }

    #[test]
    fn overflowing_point_is_consistency_failure() {
        let (code, _, err) = run_args(&["classify", "--gamma0", "10", "--mu", "1", "--omega", "0.01"]);
        assert_eq!(code, EXIT_CONSISTENCY);
        assert_eq!(err.lines().count(), 1);
    }

    #[test]
    fn boundary_outputs() {
        let (code, out, _) = run_args(&["boundary", "--kind", "unbroken-ellipse", "--n", "1", "--samples", "5"]);
        assert_eq!(code, 0);
        let rows: Vec<&str> = out.lines().collect();
        assert_eq!(rows[0], "gamma0,omega");
        assert_eq!(rows[1], "0,1");
        let (code, out, _) = run_args(&["boundary", "--kind", "broken-ellipse", "--n", "0", "--samples", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().nth(1), Some("0,2"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("sweep"));
    }
}
