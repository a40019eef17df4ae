use std::time::Instant;

use eopsi::extensions::{
    build_hermite_extension, build_laguerre2_extension, build_laguerre_extension, ExtensionSpec,
    LaguerreCase,
};
use eopsi::numverify::{
    fd_eigs, fd_eigs_batch, ortho_gram, spectrum_check, state_residual, wavefunction_check,
    ClosedFormState, GridSpec, NumericPotential, QuadConfig,
};
use eopsi::extensions::BasePotential;
use eopsi::{rat, Error, Poly, RatFunc, Rational};

fn q(n: i64) -> Rational {
    rat(n, 1)
}

fn line() -> GridSpec {
    GridSpec::new(-12.0, 12.0, 3000).unwrap()
}

fn half_line() -> GridSpec {
    GridSpec::new(0.0, 20.0, 3000).unwrap()
}

fn assert_close(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (g, w) in got.iter().zip(want) {
        assert!((g - w).abs() < tol, "{g} vs {w} (tol {tol}); all: {got:?}");
    }
}

#[test]
fn oscillator_levels() {
    let t = Instant::now();
    let r = fd_eigs(&NumericPotential::oscillator(), &line(), 4).unwrap();
    println!("oscillator {:?} {:?}", r.computed, t.elapsed());
    assert_close(&r.computed, &[1.0, 3.0, 5.0, 7.0], 1e-5);
    assert!(t.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn radial_levels() {
    let r = fd_eigs(&NumericPotential::radial(&q(2)), &half_line(), 3).unwrap();
    println!("radial {:?}", r.computed);
    assert_close(&r.computed, &[3.5, 5.5, 7.5], 1e-3);
}

#[test]
fn hermite_extension_levels() {
    let spec = build_hermite_extension(2).unwrap();
    let t = Instant::now();
    let r = spectrum_check(&spec, &line(), 4).unwrap();
    println!("hermite ext {:?} {:?}", r.computed, t.elapsed());
    assert_close(&r.computed, &[-5.0, 1.0, 3.0, 5.0], 1e-4);
    assert!(r.within(1e-4));
}

#[test]
fn laguerre_extension_levels() {
    let spec = build_laguerre_extension(LaguerreCase::I, &q(2), 1).unwrap();
    let r = spectrum_check(&spec, &half_line(), 3).unwrap();
    println!("laguerre I {:?}", r.computed);
    assert_close(&r.computed, &[2.5, 4.5, 6.5], 1e-3);
}

/// Every extension built in the test suite: no missing and no spurious level
/// among the lowest ones.
#[test]
fn spectra_of_all_extensions() {
    let mut specs: Vec<(String, ExtensionSpec, GridSpec)> = Vec::new();
    for m in [2usize, 4] {
        specs.push((format!("hermite m={m}"), build_hermite_extension(m).unwrap(), line()));
    }
    for (case, l, m) in [
        (LaguerreCase::I, q(2), 1usize),
        (LaguerreCase::I, rat(7, 2), 2),
        (LaguerreCase::II, q(2), 1),
        (LaguerreCase::II, q(5), 3),
        (LaguerreCase::III, q(2), 2),
        (LaguerreCase::III, q(5), 4),
    ] {
        specs.push((
            format!("laguerre {case:?} l={l} m={m}"),
            build_laguerre_extension(case, &l, m).unwrap(),
            GridSpec::new(0.0, 24.0, 3000).unwrap(),
        ));
    }
    specs.push((
        "second order".to_string(),
        build_laguerre2_extension(&q(2), 1, 1).unwrap(),
        GridSpec::new(0.0, 24.0, 3000).unwrap(),
    ));
    for (name, spec, grid) in &specs {
        let r = spectrum_check(spec, grid, 5).unwrap();
        println!("{name}: {:?} max err {:?}", r.computed, r.max_abs_error);
        assert!(r.within(2e-3), "{name}: {:?} vs {:?}", r.computed, r.analytic);
    }
}

#[test]
fn batch_keeps_order() {
    let jobs = vec![
        (NumericPotential::oscillator(), GridSpec::new(-10.0, 10.0, 800).unwrap(), 2),
        (NumericPotential::radial(&q(1)), GridSpec::new(0.0, 20.0, 800).unwrap(), 2),
    ];
    let out = fd_eigs_batch(&jobs);
    assert_close(&out[0].as_ref().unwrap().computed, &[1.0, 3.0], 1e-4);
    assert_close(&out[1].as_ref().unwrap().computed, &[2.5, 4.5], 1e-3);
}

fn slope(e1: f64, e2: f64, h1: f64, h2: f64) -> f64 {
    (e1.ln() - e2.ln()) / (h1.ln() - h2.ln())
}

#[test]
fn convergence_orders() {
    let pot = NumericPotential::oscillator();
    let grids: Vec<GridSpec> = [99usize, 199, 399]
        .iter()
        .map(|&n| GridSpec::new(-10.0, 10.0, n).unwrap())
        .collect();
    let reports: Vec<_> = grids.iter().map(|g| fd_eigs(&pot, g, 3).unwrap()).collect();
    for level in 0..3 {
        let exact = (2 * level + 1) as f64;
        let raw: Vec<f64> = reports.iter().map(|r| (r.coarse[level] - exact).abs()).collect();
        let ext: Vec<f64> = reports.iter().map(|r| (r.computed[level] - exact).abs()).collect();
        let h: Vec<f64> = grids.iter().map(|g| g.h()).collect();
        for i in 0..2 {
            let s_raw = slope(raw[i], raw[i + 1], h[i], h[i + 1]);
            let s_ext = slope(ext[i], ext[i + 1], h[i], h[i + 1]);
            println!("level {level}: raw slope {s_raw:.3}, extrapolated slope {s_ext:.3}");
            assert!((s_raw - 2.0).abs() < 0.3, "raw slope {s_raw}");
            assert!(s_ext > 4.0 * 0.85, "extrapolated slope {s_ext}");
        }
    }
}

#[test]
fn invalid_grids_and_potentials() {
    assert!(matches!(GridSpec::new(1.0, 1.0, 100), Err(Error::InvalidGrid(_))));
    assert!(matches!(GridSpec::new(0.0, 1.0, 15), Err(Error::InvalidGrid(_))));
    // a half-line potential sampled at x = 0 is infinite
    let g = GridSpec::new(-1.0, 1.0, 16).unwrap();
    let err = fd_eigs(&NumericPotential::radial(&q(1)), &g, 1).unwrap_err();
    assert!(matches!(err, Error::InvalidGrid(_)));
    // 1/x with a node at x = 0
    let g = GridSpec::new(-1.0, 1.0, 17).unwrap();
    let pot = NumericPotential::new(
        BasePotential::Oscillator,
        &RatFunc::recip_poly(&Poly::x()).unwrap(),
        &q(0),
    );
    assert!(matches!(fd_eigs(&pot, &g, 1), Err(Error::NonFinitePotential(x)) if x.abs() < 1e-12));
}

#[test]
fn gram_matrices() {
    let cfg = QuadConfig::default();
    let spec = build_hermite_extension(2).unwrap();
    let g = ortho_gram(&spec, &[0, 3, 4, 5, 6], &cfg).unwrap();
    println!("hermite ratio {:e} panels {} cutoff {}", g.max_offdiag_ratio, g.panels, g.cutoff);
    assert!(g.max_offdiag_ratio < 1e-8);
    for i in 0..5 {
        assert!(g.matrix[i][i] > 0.0);
        for j in 0..5 {
            assert_eq!(g.matrix[i][j], g.matrix[j][i]);
        }
    }

    let spec = build_laguerre_extension(LaguerreCase::I, &q(2), 1).unwrap();
    for degrees in [vec![1usize, 2, 3, 4], vec![1, 2, 3, 4, 5]] {
        let g = ortho_gram(&spec, &degrees, &cfg).unwrap();
        println!("laguerre ratio {:e} panels {}", g.max_offdiag_ratio, g.panels);
        assert!(g.max_offdiag_ratio < 1e-8);
    }

    for (case, m) in [(LaguerreCase::II, 2usize), (LaguerreCase::III, 2)] {
        let spec = build_laguerre_extension(case, &q(3), m).unwrap();
        let degrees: Vec<usize> = spec
            .spectrum
            .first_nus(5)
            .into_iter()
            .filter_map(|nu| spec.eop_degree(nu))
            .collect();
        let g = ortho_gram(&spec, &degrees, &cfg).unwrap();
        assert!(g.max_offdiag_ratio < 1e-8, "{case:?}: {:e}", g.max_offdiag_ratio);
    }

    let spec = build_laguerre2_extension(&q(2), 1, 1).unwrap();
    let degrees: Vec<usize> = (0..5).filter_map(|nu| spec.eop_degree(nu)).collect();
    let g = ortho_gram(&spec, &degrees, &cfg).unwrap();
    assert!(g.max_offdiag_ratio < 1e-8, "second order: {:e}", g.max_offdiag_ratio);

    // a single polynomial against itself
    let spec = build_hermite_extension(2).unwrap();
    let g = ortho_gram(&spec, &[3], &cfg).unwrap();
    assert!(g.matrix[0][0] > 0.0);

    let err = ortho_gram(&spec, &[1], &cfg).unwrap_err();
    assert!(matches!(err, Error::InvalidArgument(_)));
}

#[test]
fn quadrature_failure_is_reported() {
    let spec = build_hermite_extension(2).unwrap();
    let cfg = QuadConfig {
        order: 2,
        initial_panels: 1,
        max_panels: 4,
        ..QuadConfig::default()
    };
    let err = ortho_gram(&spec, &[0, 3], &cfg).unwrap_err();
    assert!(matches!(err, Error::QuadratureNonConvergence(_)));
    assert!(err.is_verification_failure());
}

#[test]
fn closed_form_wavefunctions() {
    let grid = GridSpec::new(-8.0, 8.0, 400).unwrap();
    let r = state_residual(&ClosedFormState::oscillator(0), &grid).unwrap();
    println!("oscillator ground state residual {:e}", r.residual);
    assert!(r.residual < 1e-10);

    let spec = build_hermite_extension(2).unwrap();
    for nu in [-3i64, 0, 1, 4] {
        let r = wavefunction_check(&spec, nu, &grid).unwrap();
        println!("hermite m=2 nu={nu}: {:e}", r.residual);
        assert!(r.residual < 1e-8);
    }

    let half = GridSpec::new(0.0, 14.0, 400).unwrap();
    for (case, m) in [
        (LaguerreCase::I, 1usize),
        (LaguerreCase::II, 1),
        (LaguerreCase::III, 2),
    ] {
        let spec = build_laguerre_extension(case, &q(2), m).unwrap();
        for nu in spec.spectrum.first_nus(3) {
            let r = wavefunction_check(&spec, nu, &half).unwrap();
            println!("{case:?} nu={nu}: {:e}", r.residual);
            assert!(r.residual < 1e-8);
        }
    }
    let spec = build_laguerre2_extension(&q(2), 1, 1).unwrap();
    for nu in 0..3 {
        let r = wavefunction_check(&spec, nu, &half).unwrap();
        println!("second order nu={nu}: {:e}", r.residual);
        assert!(r.residual < 1e-8);
    }

    // a wrong energy is detected
    let mut wrong = ClosedFormState::partner(&spec, 0).unwrap();
    wrong.energy += 1e-3;
    assert!(state_residual(&wrong, &half).unwrap().residual > 1e-4);
}
