use pt_floquet::analytic::{broken_ellipse, mu0_sliver_curve, unbroken_ellipse};
use pt_floquet::floquet::{classify, classify_matrix, passive_monodromy};
use pt_floquet::sweep::{sweep_grid, sweep_grid_with};
use pt_floquet::{AxisRange, DrivingSpec, Parallelism, PhaseClass, DEFAULT_TOL};

fn spec(g: f64, mu: f64, w: f64) -> DrivingSpec {
    DrivingSpec::new(1.0, g, mu, w).unwrap()
}

#[test]
fn reversed_drive_never_unbroken_above_static_threshold() {
    let grid = sweep_grid(
        -1.0,
        1.0,
        AxisRange::new(0.0, 4.0, 600).unwrap(),
        AxisRange::new(0.05, 2.0, 600).unwrap(),
        DEFAULT_TOL,
    )
    .unwrap();
    for i in 0..grid.rows() {
        if grid.gamma_axis[i] <= 1.0 {
            continue;
        }
        for j in 0..grid.cols() {
            assert_ne!(
                grid.class(i, j),
                PhaseClass::Unbroken,
                "gamma0={} omega={}",
                grid.gamma_axis[i],
                grid.omega_axis[j]
            );
        }
    }
}

#[test]
fn reversed_drive_ellipses() {
    for n in 1..=4 {
        for &(g, w) in &unbroken_ellipse(n, 1.0, 40).unwrap().points {
            assert_eq!(classify(&spec(g, -1.0, w), DEFAULT_TOL).phase, PhaseClass::Unbroken);
        }
    }
    for n in 0..=4 {
        for &(g, w) in broken_ellipse(n, 1.0, 40).unwrap().points.iter().skip(1) {
            assert_eq!(
                classify(&spec(g, -1.0, w), DEFAULT_TOL).phase,
                PhaseClass::Broken,
                "n={n} g={g}"
            );
        }
    }
}

#[test]
fn hermitian_half_slivers_are_unbroken_while_resolvable() {
    // q·τ stays below ~25 here, so the sliver is wider than one ulp of ω
    for n in [1, 3, 5] {
        let curve = mu0_sliver_curve(n, 1.0, 3.0, 20).unwrap();
        for &(g, w) in &curve.points {
            let r = classify(&spec(g, 0.0, w), DEFAULT_TOL);
            assert_eq!(r.phase, PhaseClass::Unbroken, "n={n} gamma0={g} omega={w}");
        }
    }
}

#[test]
fn passive_partner_has_the_same_phase_diagram() {
    let grid = sweep_grid(
        0.5,
        1.0,
        AxisRange::new(0.0, 3.0, 61).unwrap(),
        AxisRange::new(0.3, 5.0, 61).unwrap(),
        DEFAULT_TOL,
    )
    .unwrap();
    for (g, w, c, class, _) in grid.cells() {
        let s = spec(g, 0.5, w);
        let p = classify_matrix(passive_monodromy(&s), s.tau(), DEFAULT_TOL);
        // loss only: nothing grows
        assert!(p.g_plus.norm() <= 1.0 + 1e-12, "gamma0={g} omega={w}");
        if c == 0.0 || c > 1e-6 {
            assert_eq!(p.phase, class, "gamma0={g} omega={w}");
        }
    }
}

#[test]
fn explicit_pool_matches_global_pool() {
    let run = |p| {
        sweep_grid_with(
            -0.7,
            1.0,
            AxisRange::new(0.0, 4.0, 120).unwrap(),
            AxisRange::new(0.1, 6.0, 130).unwrap(),
            DEFAULT_TOL,
            p,
        )
        .unwrap()
    };
    assert_eq!(run(Parallelism::Threads(3)), run(Parallelism::Auto));
}
