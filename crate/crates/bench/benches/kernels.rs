use criterion::{black_box, criterion_group, criterion_main, Criterion};

use eopsi::diffop::compose;
use eopsi::extensions::build_hermite_extension;
use eopsi::families::{hermite, laguerre};
use eopsi::numverify::{fd_eigs, GridSpec, NumericPotential};
use eopsi::superalg::{build_system, enumerate_reps, Case2D, EnumOptions, SystemParams};
use eopsi::{rat, RatFunc};

fn polynomials(c: &mut Criterion) {
    let a = &hermite(12) * &laguerre(6, &rat(5, 2), false);
    let b = &hermite(9) * &laguerre(6, &rat(5, 2), false);
    c.bench_function("poly_gcd_deg18_deg15", |bn| bn.iter(|| black_box(&a).gcd(black_box(&b))));
    c.bench_function("ratfunc_normalize", |bn| {
        bn.iter(|| RatFunc::normalize(black_box(a.clone()), black_box(b.clone())))
    });
}

fn operators(c: &mut Criterion) {
    let spec = build_hermite_extension(4).expect("extension");
    c.bench_function("compose_supercharges", |bn| {
        bn.iter(|| compose(black_box(&spec.a_dagger), black_box(&spec.a)))
    });
}

fn representations(c: &mut Criterion) {
    let params = SystemParams {
        m1: Some(2),
        m2: Some(2),
        ..Default::default()
    };
    let sys = build_system(Case2D::H2, &params).expect("system");
    c.bench_function("enumerate_reps_h2", |bn| {
        bn.iter(|| enumerate_reps(black_box(&sys), &EnumOptions::default()))
    });
}

fn eigenvalues(c: &mut Criterion) {
    let grid = GridSpec::new(-12.0, 12.0, 3000).expect("grid");
    let pot = NumericPotential::oscillator();
    c.bench_function("fd_eigs_oscillator_k4", |bn| {
        bn.iter(|| fd_eigs(black_box(&pot), &grid, 4))
    });
}

criterion_group!(benches, polynomials, operators, representations, eigenvalues);
criterion_main!(benches);
