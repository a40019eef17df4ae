//! Representations of the six 2D cases. Expected rows are written as
//! closed forms in the parameters and compared against the enumeration by
//! evaluating the reduced structure function as a polynomial in `x` for
//! `p = 0..5`.

use std::time::Instant;

use eopsi::superalg::{
    build_system, detect_holes, enumerate_reps, Case2D, EnumOptions, Enumeration, PRange,
    RepSolution, SystemParams,
};
use eopsi::{rat, Poly, Rational};

fn q(n: i64) -> Rational {
    rat(n, 1)
}

/// `a x + b p + c` as a polynomial in `x` at fixed `p`.
#[derive(Clone)]
struct Lin(Rational, Rational, Rational);

fn lin(a: i64, b: i64, c: Rational) -> Lin {
    Lin(q(a), q(b), c)
}

struct Row {
    branch: usize,
    p: PRange,
    slope: Rational,
    intercept: Rational,
    constant: Rational,
    factors: Vec<Lin>,
}

fn expected_phi(row: &Row, p: i64) -> Poly {
    row.factors
        .iter()
        .fold(Poly::constant(row.constant.clone()), |acc, f| {
            &acc * &Poly::new(vec![&f.1 * &q(p) + &f.2, f.0.clone()])
        })
}

/// Rows are matched on the branch function `u(E)`, so a solution labelled by
/// a coinciding branch at a degenerate parameter point still matches.
fn matches(en: &Enumeration, sol: &RepSolution, row: &Row) -> bool {
    let b = &en.branches[row.branch - 1];
    if (&sol.branch.e, &sol.branch.c) != (&b.e, &b.c) || sol.p != row.p {
        return false;
    }
    let ps: Vec<i64> = match row.p {
        PRange::All => (0..=5).collect(),
        PRange::Value(p) => vec![p as i64],
    };
    ps.iter().all(|&p| {
        sol.energy.eval(&q(p)) == &row.slope * &q(p) + &row.intercept
            && sol.phi.poly_at(&q(p)) == expected_phi(row, p)
    })
}

fn check_rows(en: &Enumeration, rows: &[Row]) {
    assert_eq!(
        en.solutions.len(),
        rows.len(),
        "solutions: {:#?}",
        en.solutions.iter().map(|s| s.phi.to_string()).collect::<Vec<_>>()
    );
    for (i, row) in rows.iter().enumerate() {
        assert!(
            en.solutions.iter().any(|s| matches(en, s, row)),
            "row {} not found among {:?}",
            i + 1,
            en.solutions
                .iter()
                .map(|s| format!("u{} {:?} E={}p+{} {}", s.branch.index, s.p, s.energy.slope, s.energy.intercept, s.phi))
                .collect::<Vec<_>>()
        );
    }
}

fn run(case: Case2D, params: SystemParams) -> Enumeration {
    let sys = build_system(case, &params).unwrap();
    let t = Instant::now();
    let en = enumerate_reps(&sys, &EnumOptions::default()).unwrap();
    let dt = t.elapsed();
    println!("{case} {params:?}: {} solutions in {dt:?}", en.solutions.len());
    assert!(dt.as_secs_f64() < 1.0);
    en
}

fn branch_strings(en: &Enumeration) -> Vec<String> {
    en.branches.iter().map(|b| b.to_string()).collect()
}

fn branch(en: &Enumeration, i: usize) -> (Rational, Rational) {
    let b = &en.branches[i - 1];
    (b.e.clone(), b.c.clone())
}

fn hermite_params(m: usize) -> SystemParams {
    SystemParams {
        m: Some(m),
        ..Default::default()
    }
}

#[test]
fn hermite_single_extension() {
    for m in [2usize, 4, 6] {
        let en = run(Case2D::H1, hermite_params(m));
        let mm = q(m as i64);
        let rows = [
            Row {
                branch: 1,
                p: PRange::All,
                slope: q(2),
                intercept: q(2),
                constant: q(16),
                factors: vec![
                    lin(1, 0, q(0)),
                    lin(-1, 1, q(1)),
                    lin(1, 0, mm.clone()),
                    lin(1, 0, &mm + q(1)),
                ],
            },
            Row {
                branch: 3,
                p: PRange::Value(0),
                slope: q(2),
                intercept: -q(2) * &mm,
                constant: q(16),
                factors: vec![
                    lin(1, 0, q(0)),
                    lin(-1, 1, q(1)),
                    lin(1, 0, -q(1) - &mm),
                    lin(1, 0, q(-1)),
                ],
            },
        ];
        check_rows(&en, &rows);
        // every Phi factor of the symbolic row stays positive between the zeros
        let fam = en.solutions.iter().find(|s| s.p == PRange::All).unwrap();
        for p in 0..10 {
            for x in 1..=p {
                assert!(fam.phi.eval(&q(p), &q(x)) > q(0));
            }
        }
    }
}

#[test]
fn hermite_u_branches() {
    let en = run(Case2D::H1, hermite_params(2));
    assert_eq!(
        branch_strings(&en),
        ["u1 = -1/4E + 1/2", "u2 = -1/4E - 3/2", "u3 = -1/4E - 5/2", "u4 = 1/4E + 1/2"]
    );
}

#[test]
fn hermite_double_extension() {
    let (m1, m2) = (2i64, 2i64);
    let en = run(
        Case2D::H2,
        SystemParams {
            m1: Some(m1 as usize),
            m2: Some(m2 as usize),
            ..Default::default()
        },
    );
    let (a, b) = (q(m1), q(m2));
    let x = || lin(1, 0, q(0));
    let rows = [
        Row {
            branch: 1,
            p: PRange::All,
            slope: q(2),
            intercept: q(2),
            constant: q(64),
            factors: vec![
                x(),
                lin(-1, 1, q(1)),
                lin(1, 0, a.clone()),
                lin(1, 0, &a + q(1)),
                lin(-1, 1, &b + q(1)),
                lin(-1, 1, &b + q(2)),
            ],
        },
        Row {
            branch: 1,
            p: PRange::Value(0),
            slope: q(2),
            intercept: -q(2) * &b,
            constant: q(64),
            factors: vec![
                x(),
                lin(-1, 1, q(1)),
                lin(-1, 1, q(0)),
                lin(1, 0, a.clone()),
                lin(1, 0, &a + q(1)),
                lin(-1, 1, -b.clone()),
            ],
        },
        Row {
            branch: 3,
            p: PRange::Value(0),
            slope: q(2),
            intercept: q(2) * (q(-1) - &a - &b),
            constant: q(64),
            factors: vec![
                x(),
                lin(-1, 1, q(1)),
                lin(-1, 1, q(0)),
                lin(1, 0, q(-1) - &a),
                lin(1, 0, q(-1)),
                lin(-1, 1, -b.clone()),
            ],
        },
        Row {
            branch: 3,
            p: PRange::Value(0),
            slope: q(2),
            intercept: -q(2) * &a,
            constant: q(64),
            factors: vec![
                x(),
                lin(1, 0, q(-1)),
                lin(1, 0, q(-1) - &a),
                lin(-1, 1, q(1)),
                lin(-1, 1, &b + q(1)),
                lin(-1, 1, &b + q(2)),
            ],
        },
        Row {
            branch: 5,
            p: PRange::Value(0),
            slope: q(-2),
            intercept: q(-2) * (q(1) + &a + &b),
            constant: q(64),
            factors: vec![
                x(),
                lin(-1, 1, q(1)),
                lin(1, 0, q(-1)),
                lin(1, 0, b.clone()),
                lin(-1, 1, q(0)),
                lin(-1, 1, &a + q(1)),
            ],
        },
    ];
    check_rows(&en, &rows);

    assert_eq!(
        branch_strings(&en),
        [
            "u1 = -1/4E + 1/2",
            "u2 = -1/4E - 3/2",
            "u3 = -1/4E - 5/2",
            "u4 = 1/4E + 1/2",
            "u5 = 1/4E + 5/2",
            "u6 = 1/4E + 7/2",
        ]
    );

    // the third and fifth rows share the same structure function
    let third = en.solutions.iter().position(|s| matches(&en, s, &rows[2])).unwrap();
    let fifth = en.solutions.iter().position(|s| matches(&en, s, &rows[4])).unwrap();
    assert_eq!(en.solutions[third].duplicate_phi_with, vec![fifth]);
    assert_eq!(en.solutions[fifth].duplicate_phi_with, vec![third]);
    for (i, s) in en.solutions.iter().enumerate() {
        if i != third && i != fifth {
            assert!(s.duplicate_phi_with.is_empty());
        }
    }
}

fn lag_params(m: usize, l: Rational) -> SystemParams {
    SystemParams {
        m: Some(m),
        l: Some(l),
        ..Default::default()
    }
}

/// Grid of `(l, m)` used for the Laguerre cases; points violating a case's
/// constraints are skipped by the caller.
fn lag_grid() -> Vec<(Rational, usize)> {
    let mut out = Vec::new();
    for l in [rat(1, 2), q(1), rat(3, 2), q(2), rat(7, 2), q(5)] {
        for m in 1..=4usize {
            out.push((l.clone(), m));
        }
    }
    out
}

fn half_x(c: Rational) -> Lin {
    // 2x + c
    Lin(q(2), q(0), c)
}

#[test]
fn laguerre_single_extensions() {
    let mut checked = [0usize; 3];
    for (l, m) in lag_grid() {
        let mm = q(m as i64);
        let alpha = &l + rat(1, 2);
        let base = || vec![lin(1, 0, q(0)), lin(-1, 1, q(1))];

        // Case I
        if let Ok(sys) = build_system(Case2D::LagI, &lag_params(m, l.clone())) {
            let en = enumerate_reps(&sys, &EnumOptions::default()).unwrap();
            let mut f = base();
            f.extend([
                half_x(q(-1) + q(2) * &l),
                half_x(q(2) * &mm + q(2) * &l - q(1)),
                half_x(q(2) * &mm + q(2) * &l + q(1)),
            ]);
            check_rows(
                &en,
                &[Row {
                    branch: 1,
                    p: PRange::All,
                    slope: q(2),
                    intercept: rat(3, 2) + &l,
                    constant: q(1),
                    factors: f,
                }],
            );
            checked[0] += 1;
        }

        // Case II
        if alpha > &mm - q(1) {
            let sys = build_system(Case2D::LagII, &lag_params(m, l.clone())).unwrap();
            let en = enumerate_reps(&sys, &EnumOptions::default()).unwrap();
            let mut f = base();
            f.extend([
                half_x(q(3) + q(2) * &l),
                half_x(q(1) + q(2) * &l - q(2) * &mm),
                half_x(q(3) + q(2) * &l - q(2) * &mm),
            ]);
            check_rows(
                &en,
                &[Row {
                    branch: 1,
                    p: PRange::All,
                    slope: q(2),
                    intercept: rat(7, 2) + &l,
                    constant: q(1),
                    factors: f,
                }],
            );
            checked[1] += 1;
        }

        // Case III
        if m % 2 == 0 && alpha > &mm - q(1) {
            let sys = build_system(Case2D::LagIII, &lag_params(m, l.clone())).unwrap();
            let en = enumerate_reps(&sys, &EnumOptions::default()).unwrap();
            let mut f1 = base();
            f1.extend([
                lin(1, 0, mm.clone()),
                lin(1, 0, &mm + q(1)),
                half_x(q(3) + q(2) * &l),
            ]);
            let mut f2 = base();
            f2.extend([
                lin(1, 0, q(-1)),
                lin(1, 0, q(-1) - &mm),
                half_x(q(1) + q(2) * &l - q(2) * &mm),
            ]);
            check_rows(
                &en,
                &[
                    Row {
                        branch: 1,
                        p: PRange::All,
                        slope: q(2),
                        intercept: rat(7, 2) + &l,
                        constant: q(4),
                        factors: f1,
                    },
                    Row {
                        branch: 4,
                        p: PRange::Value(0),
                        slope: q(2),
                        intercept: rat(3, 2) + &l - q(2) * &mm,
                        constant: q(4),
                        factors: f2,
                    },
                ],
            );
            checked[2] += 1;
        }
    }
    println!("grid points checked (I, II, III): {checked:?}");
    assert!(checked.iter().all(|&c| c >= 4));
}

#[test]
fn laguerre_u_branches() {
    let l = q(2);
    let m = 2usize;
    let lp = &l - q(1);
    let en = run(Case2D::LagI, lag_params(m, l.clone()));
    let quarter = rat(-1, 4);
    assert_eq!(branch(&en, 1), (quarter.clone(), rat(3, 4) + &lp / q(2)));
    assert_eq!(branch(&en, 2), (quarter.clone(), rat(1, 4) - &lp / q(2)));
    let ex = -(&l + rat(1, 2) + q(2 * m as i64));
    assert_eq!(branch(&en, 3), (quarter.clone(), q(1) + &ex / q(2)));
    assert_eq!(branch(&en, 4), (quarter.clone(), &ex / q(2)));
    assert_eq!(branch(&en, 5), (rat(1, 4), rat(1, 2)));

    let en = run(Case2D::LagIII, lag_params(m, l.clone()));
    let lp = &l + q(1);
    let ex = &l + rat(1, 2) - q(2 * m as i64);
    assert_eq!(branch(&en, 1), (quarter.clone(), rat(3, 4) + &lp / q(2)));
    assert_eq!(branch(&en, 2), (quarter.clone(), rat(1, 4) - &lp / q(2)));
    assert_eq!(branch(&en, 3), (quarter.clone(), q(1) + &ex / q(2)));
    assert_eq!(branch(&en, 4), (quarter, &ex / q(2)));
    assert_eq!(branch(&en, 5), (rat(1, 4), rat(1, 2)));
}

#[test]
fn second_order_extension() {
    let (l, m1, m2) = (q(2), 1i64, 1i64);
    let en = run(
        Case2D::Lag2,
        SystemParams {
            m1: Some(m1 as usize),
            m2: Some(m2 as usize),
            l: Some(l.clone()),
            ..Default::default()
        },
    );
    let (a, b) = (q(m1), q(m2));
    let row = Row {
        branch: 1,
        p: PRange::All,
        slope: q(2),
        intercept: &l + rat(5, 2),
        constant: q(32),
        factors: vec![
            lin(1, 0, q(0)),
            lin(-1, 1, q(1)),
            lin(1, 0, &l + rat(1, 2)),
            lin(1, 0, &l + &a + rat(1, 2)),
            lin(1, 0, &l + &a + rat(3, 2)),
            lin(1, 0, &l - &b - rat(1, 2)),
            lin(1, 0, &l - &b + rat(1, 2)),
        ],
    };
    check_rows(&en, &[row]);

    let quarter = rat(-1, 4);
    let half_l = &l / q(2);
    let expected = [
        (quarter.clone(), &half_l * q(1) + rat(3, 4)),
        (quarter.clone(), -&half_l + rat(1, 4)),
        (quarter.clone(), -&half_l - &a + rat(1, 4)),
        (quarter.clone(), -&half_l - &a - rat(3, 4)),
        (quarter.clone(), -&half_l + &b + rat(5, 4)),
        (quarter.clone(), -&half_l + &b + rat(1, 4)),
        (rat(1, 4), rat(1, 2)),
    ];
    for (i, e) in expected.iter().enumerate() {
        assert_eq!(&branch(&en, i + 1), e, "u{}", i + 1);
    }

    // every other branch is rejected by positivity or spectrum membership
    for d in &en.diagnostics {
        println!("u{}: {}", d.branch.index, d.verdict());
        if d.branch.index == 1 {
            assert_eq!(d.solutions, 1);
        } else {
            assert_eq!(d.solutions, 0);
            assert!(d.rejected_positivity + d.rejected_spectrum > 0);
        }
    }
}

#[test]
fn holes_of_the_hermite_case() {
    let sys = build_system(Case2D::H1, &hermite_params(2)).unwrap();
    let en = enumerate_reps(&sys, &EnumOptions::default()).unwrap();
    let report = detect_holes(&sys, &en.solutions, &q(20));

    let lvl = report.level(&q(-2)).unwrap();
    assert_eq!(lvl.uncovered, vec![(-3, 1)]);
    assert_eq!(lvl.algebraic_degeneracy, 0);
    let lvl = report.level(&q(0)).unwrap();
    assert_eq!(lvl.uncovered, vec![(-3, 2)]);
    let lvl = report.level(&q(-4)).unwrap();
    assert!(lvl.uncovered.is_empty());
    for s in 1..=10i64 {
        let lvl = report.level(&q(2 * s)).unwrap();
        assert_eq!(lvl.physical_degeneracy, (s + 1) as usize, "E = {}", 2 * s);
        assert_eq!(lvl.algebraic_degeneracy, s as usize, "E = {}", 2 * s);
        assert_eq!(lvl.uncovered, vec![(-3, s + 2)]);
    }
}

#[test]
fn laguerre_case_one_has_no_holes() {
    for (l, m) in [(q(2), 1usize), (q(3), 2), (rat(3, 2), 3)] {
        let sys = build_system(Case2D::LagI, &lag_params(m, l)).unwrap();
        let en = enumerate_reps(&sys, &EnumOptions::default()).unwrap();
        let report = detect_holes(&sys, &en.solutions, &q(30));
        assert!(!report.levels.is_empty());
        assert_eq!(report.holes().count(), 0);
    }
}

#[test]
fn integral_shift_is_one() {
    for (case, params) in [
        (Case2D::H1, hermite_params(2)),
        (Case2D::LagII, lag_params(1, q(2))),
    ] {
        let sys = build_system(case, &params).unwrap();
        assert_eq!(sys.k_shift(), q(1));
    }
}
