use eopsi::extensions::{
    build_hermite_extension, build_laguerre2_extension, build_laguerre_extension, ExtensionSpec,
    LaguerreCase,
};
use eopsi::families::{hermite, pseudo_hermite};
use eopsi::ratpoly::{int, rat, Rational};
use eopsi::Poly;

fn all_eops_up_to(spec: &ExtensionSpec, n_max: usize) -> Vec<(i64, usize)> {
    let mut out = Vec::new();
    for nu in spec.spectrum.first_nus(n_max + 2) {
        let n = spec.eop_degree(nu).unwrap();
        if n > n_max {
            break;
        }
        let y = spec.eop(nu).unwrap();
        assert_eq!(y.n, n);
        let r = spec.ode_residual(&y);
        assert!(r.is_zero(), "{:?} nu = {nu}: residual {r}", spec.family);
        out.push((nu, n));
    }
    out
}

fn degrees(v: &[(i64, usize)]) -> Vec<usize> {
    v.iter().map(|&(_, n)| n).collect()
}

#[test]
fn hermite_residuals_and_degree_sets() {
    for m in [0, 2, 4, 6] {
        let spec = build_hermite_extension(m).unwrap();
        let got = degrees(&all_eops_up_to(&spec, 12));
        let mut expect = vec![0];
        expect.extend(m + 1..=12);
        assert_eq!(got, expect, "m = {m}");
    }
}

#[test]
fn hermite_eop_matches_closed_form() {
    // -H_m H_{nu+1} - 2 m H_{m-1} H_nu, up to normalization
    for m in [2usize, 4] {
        let spec = build_hermite_extension(m).unwrap();
        let hm = pseudo_hermite(m);
        let hm1 = pseudo_hermite(m - 1);
        for nu in 0..8usize {
            let closed = &(-&(&hm * &hermite(nu + 1)))
                - &(&hm1 * &hermite(nu)).scale(&int(2 * m as i64));
            let y = spec.eop(nu as i64).unwrap();
            assert_eq!(y.coeffs, closed.primitive_positive(), "m = {m}, nu = {nu}");
        }
    }
}

#[test]
fn laguerre_residuals_and_degree_sets() {
    let ls: [Rational; 3] = [int(2), rat(7, 2), int(5)];
    for l in &ls {
        for m in 1..=3usize {
            for case in [LaguerreCase::I, LaguerreCase::II, LaguerreCase::III] {
                let Ok(spec) = build_laguerre_extension(case, l, m) else {
                    continue;
                };
                let got = degrees(&all_eops_up_to(&spec, 12));
                let expect: Vec<usize> = match case {
                    LaguerreCase::III => std::iter::once(0).chain(m + 1..=12).collect(),
                    _ => (m..=12).collect(),
                };
                assert_eq!(got, expect, "{case:?} l = {l} m = {m}");
            }
        }
    }
}

#[test]
fn second_order_residuals() {
    for (m1, m2) in [(0, 0), (1, 0), (1, 1), (2, 1)] {
        let spec = build_laguerre2_extension(&int(2), m1, m2).unwrap();
        let got = degrees(&all_eops_up_to(&spec, 12));
        let mu = m1 + m2 + 1;
        assert_eq!(got, (mu..=12).collect::<Vec<_>>());
    }
}

#[test]
fn case_three_singlet_is_constant() {
    let spec = build_laguerre_extension(LaguerreCase::III, &int(2), 2).unwrap();
    assert_eq!(spec.eop(-3).unwrap().coeffs, Poly::one());
}

#[test]
fn ladder_polynomial_vanishes_exactly_at_chain_bottoms() {
    use num_traits::{Signed, Zero};
    let l = int(2);
    let specs = vec![
        build_hermite_extension(2).unwrap(),
        build_hermite_extension(4).unwrap(),
        build_laguerre_extension(LaguerreCase::I, &l, 1).unwrap(),
        build_laguerre_extension(LaguerreCase::II, &l, 1).unwrap(),
        build_laguerre_extension(LaguerreCase::III, &l, 2).unwrap(),
        build_laguerre2_extension(&l, 1, 1).unwrap(),
    ];
    for spec in specs {
        for nu in spec.spectrum.first_nus(10) {
            let e = spec.energy(nu);
            let p = spec.ladder_p.eval(&e);
            assert!(!p.is_negative(), "{:?} nu = {nu}", spec.family);
            let below = &e - int(2);
            let has_below = spec.spectrum.nu_of(&below).is_some();
            assert_eq!(p.is_zero(), !has_below, "{:?} nu = {nu}", spec.family);
        }
    }
}
