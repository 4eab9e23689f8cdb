use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use pt_floquet::floquet::classify;
use pt_floquet::{DrivingSpec, PhaseClass};
use pt_floquet_cli::csv::{parse_sweep, COLUMNS};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pt-floquet"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn pt-floquet")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn sweep_args<'a>(out: &'a str, mu: &'a str, extra: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![
        "sweep",
        "--mu",
        mu,
        "--gamma-min",
        "0",
        "--gamma-max",
        "3",
        "--gamma-steps",
        "31",
        "--omega-min",
        "0.2",
        "--omega-max",
        "4",
        "--omega-steps",
        "23",
        "--out",
        out,
    ];
    v.extend_from_slice(extra);
    v
}

#[test]
fn classify_static_unbroken() {
    let v = json(&run(&["classify", "--gamma0", "0.5", "--mu", "1", "--omega", "3"]));
    assert_eq!(v["phase"], "Unbroken");
    assert_eq!(v["c"].as_f64(), Some(0.0));
    assert_eq!(v["J"].as_f64(), Some(1.0));
}

#[test]
fn classify_reversed_resonance_broken() {
    let v = json(&run(&["classify", "--gamma0", "0.05", "--mu", "-1", "--omega", "2"]));
    assert_eq!(v["phase"], "Broken");
    assert!(v["c"].as_f64().unwrap() > 0.0);
}

#[test]
fn classify_hermitian_point() {
    let v = json(&run(&["classify", "--gamma0", "0", "--mu", "0", "--omega", "1"]));
    assert_eq!(v["c"].as_f64(), Some(0.0));
    for k in ["g_plus_abs", "g_minus_abs"] {
        assert!((v[k].as_f64().unwrap() - 1.0).abs() < 1e-15, "{k}");
    }
}

#[test]
fn classify_passive_adds_spectral_radius() {
    let v = json(&run(&[
        "classify",
        "--gamma0",
        "0.5",
        "--mu",
        "1",
        "--omega",
        "3",
        "--passive",
    ]));
    // loss-only system decays at exp(-γ₀ T) per period
    let t = 2.0 * std::f64::consts::PI / 3.0;
    let rho = v["spectral_radius"].as_f64().unwrap();
    assert!((rho / (-0.5 * t).exp() - 1.0).abs() < 1e-12, "{rho}");
}

#[test]
fn classify_bad_parameter_exits_2() {
    let out = run(&["classify", "--gamma0", "0.5", "--mu", "1.5", "--omega", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn sweep_writes_csv_and_ppm() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("grid.csv");
    let ppm = dir.path().join("grid.ppm");
    let (c, p) = (csv.to_str().unwrap(), ppm.to_str().unwrap());
    let out = run(&sweep_args(c, "0.5", &["--ppm", p]));
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let text = fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# pt-floquet sweep mu=0.5 J=1 tol=1e-9"));
    assert_eq!(lines.next(), Some(COLUMNS));
    assert_eq!(lines.count(), 31 * 23);

    let bytes = fs::read(&ppm).unwrap();
    let head = b"P6\n23 31\n255\n";
    assert_eq!(&bytes[..head.len()], head);
    assert_eq!(bytes.len(), head.len() + 3 * 23 * 31);
}

#[test]
fn static_sweep_rows_below_threshold_have_zero_rate() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("static.csv");
    let out = run(&sweep_args(csv.to_str().unwrap(), "1", &[]));
    assert!(out.status.success());
    let table = parse_sweep(&fs::read_to_string(&csv).unwrap()).unwrap();
    let mut below = 0;
    for row in &table.rows {
        if row.gamma0 < 1.0 {
            below += 1;
            assert_eq!(row.c, 0.0, "{row:?}");
            assert_eq!(row.phase, PhaseClass::Unbroken);
        }
    }
    assert_eq!(below, 10 * 23);
}

#[test]
fn csv_round_trip_reclassifies_identically() {
    let dir = tempfile::tempdir().unwrap();
    for mu in ["0.9", "0", "-0.7", "-1"] {
        let csv = dir.path().join(format!("rt{mu}.csv"));
        let out = run(&sweep_args(csv.to_str().unwrap(), mu, &[]));
        assert!(out.status.success());
        let table = parse_sweep(&fs::read_to_string(&csv).unwrap()).unwrap();
        assert_eq!(table.rows.len(), 31 * 23);
        for row in &table.rows {
            let spec = DrivingSpec::new(table.coupling, row.gamma0, table.mu, row.omega).unwrap();
            let r = classify(&spec, table.tol);
            assert_eq!(r.phase, row.phase, "mu={mu} {row:?}");
            assert_eq!(r.c.to_bits(), row.c.to_bits());
            assert_eq!(r.trace_half.re.to_bits(), row.trace_half.to_bits());
        }
    }
}

#[test]
fn sweep_refuses_to_overwrite() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("keep.csv");
    fs::write(&csv, "precious").unwrap();
    let c = csv.to_str().unwrap();
    let out = run(&sweep_args(c, "0", &[]));
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(fs::read_to_string(&csv).unwrap(), "precious");

    let out = run(&sweep_args(c, "0", &["--force"]));
    assert!(out.status.success());
    assert!(fs::read_to_string(&csv).unwrap().starts_with("# pt-floquet sweep"));
}

#[test]
fn sweep_ppm_collision_is_checked_first() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("a.csv");
    let ppm = dir.path().join("a.ppm");
    fs::write(&ppm, "x").unwrap();
    let out = run(&sweep_args(
        csv.to_str().unwrap(),
        "0",
        &["--ppm", ppm.to_str().unwrap()],
    ));
    assert_eq!(out.status.code(), Some(2));
    assert!(!Path::new(&csv).exists());
}

#[test]
fn sweep_rejects_degenerate_grid() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("one.csv");
    let c = csv.to_str().unwrap();
    for bad in [
        &["--gamma-steps", "1", "--omega-steps", "1"][..],
        &["--omega-min", "0"],
        &["--gamma-min", "3", "--gamma-max", "1"],
    ] {
        let mut args = vec!["sweep", "--mu", "0", "--out", c];
        args.extend_from_slice(bad);
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{bad:?}");
        assert!(!csv.exists());
    }
}

#[test]
fn sweep_output_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for threads in ["1", "3", "0"] {
        let csv = dir.path().join(format!("t{threads}.csv"));
        let out = bin()
            .args(sweep_args(csv.to_str().unwrap(), "-0.7", &[]))
            .env("PT_FLOQUET_THREADS", threads)
            .output()
            .unwrap();
        assert!(out.status.success());
        files.push(fs::read(&csv).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[0], files[2]);
}

fn boundary_rows(args: &[&str]) -> Vec<(f64, f64)> {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("gamma0,omega"));
    lines
        .map(|l| {
            let (g, w) = l.split_once(',').unwrap();
            (g.parse().unwrap(), w.parse().unwrap())
        })
        .collect()
}

#[test]
fn boundary_unbroken_ellipse_points() {
    let rows = boundary_rows(&["boundary", "--kind", "unbroken-ellipse", "--n", "1"]);
    assert_eq!(rows.len(), 50);
    assert_eq!(rows[0], (0.0, 1.0));
    assert!(rows
        .iter()
        .any(|&(g, w)| (g - 0.6).abs() < 1e-15 && (w - 0.8).abs() < 1e-15));
}

#[test]
fn boundary_asymptotic_rows() {
    let rows = boundary_rows(&[
        "boundary",
        "--kind",
        "asymptotic",
        "--samples",
        "3",
        "--gamma-min",
        "5",
        "--gamma-max",
        "15",
    ]);
    assert_eq!(rows.len(), 3);
    for (&(g, w), expect_g) in rows.iter().zip([5.0, 10.0, 15.0]) {
        assert_eq!(g, expect_g);
        let expect = std::f64::consts::PI * g / g.asinh();
        assert!((w / expect - 1.0).abs() < 1e-15, "{g} {w}");
    }
}

#[test]
fn boundary_sliver_rows() {
    let rows = boundary_rows(&[
        "boundary",
        "--kind",
        "mu0-sliver",
        "--n",
        "3",
        "--samples",
        "4",
        "--gamma-max",
        "5",
    ]);
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[3].0, 5.0);
    for &(g, w) in &rows {
        assert!(g > 1.0);
        let q = (g * g - 1.0f64).sqrt();
        let jt = std::f64::consts::PI / w;
        assert!((q * jt.cos() - jt.sin()).abs() < 1e-12);
        assert!(w > 2.0 / 3.0);
    }
}

#[test]
fn boundary_even_sliver_exits_2() {
    let out = run(&["boundary", "--kind", "mu0-sliver", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
