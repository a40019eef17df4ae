use std::fmt::Write as _;

use serde::Serialize;

use eopsi::diffop::FactoredPoly;
use eopsi::extensions::ExtensionSpec;
use eopsi::numverify::{fd_eigs, ortho_gram, EigReport, GramReport, GridSpec, QuadConfig};
use eopsi::ratpoly::{int, parse_rational, rat, render};
use eopsi::report::{float_text, ser_f64, ser_poly, ser_rational, to_json};
use eopsi::superalg::{
    build_system, detect_holes, enumerate_reps, Case2D, EnumOptions, Enumeration, HoleReport,
    PRange, SystemParams,
};
use eopsi::{Poly, Rational};

use crate::args::{CaseArgs, Command, Format, GridArgs, OutArgs};
use crate::cases::{self, Problem};
use crate::output::{emit, format, unsupported};
use crate::{CliError, Io};

pub fn dispatch(cmd: &Command, io: &mut Io<'_>) -> Result<(), CliError> {
    match cmd {
        Command::Eop {
            case,
            count,
            nu,
            out,
        } => eop(case, *count, *nu, out, io),
        Command::Extend { case, out } => extend(case, out, io),
        Command::Reps {
            case,
            pmax,
            include_unphysical,
            out,
        } => reps(case, *pmax, !include_unphysical, out, io),
        Command::Holes {
            case,
            emax,
            pmax,
            out,
        } => holes(case, emax, *pmax, out, io),
        Command::VerifySpectrum {
            case,
            k,
            grid,
            tol,
            out,
        } => verify_spectrum(case, *k, grid, *tol, out, io),
        Command::VerifyOrtho {
            case,
            degrees,
            count,
            tol,
            out,
        } => verify_ortho(case, degrees.as_deref(), *count, *tol, out, io),
        Command::VerifyAlgebra { case, out } => verify_algebra(case, out, io),
        Command::ExportPotential { case, grid, out } => export_potential(case, grid, out, io),
    }
}

fn factored(fp: &FactoredPoly, var: &str) -> String {
    let mut s = String::new();
    if fp.roots.is_empty() || fp.constant != int(1) {
        s.push_str(&render(&fp.constant));
    }
    for r in &fp.roots {
        if r < &int(0) {
            let _ = write!(s, "({var} + {})", render(&-r));
        } else if r == &int(0) {
            let _ = write!(s, "({var})");
        } else {
            let _ = write!(s, "({var} - {})", render(r));
        }
    }
    s
}

fn variable(spec: &ExtensionSpec) -> &'static str {
    match spec.weight.kind {
        eopsi::extensions::WeightKind::Gaussian => "x",
        eopsi::extensions::WeightKind::Laguerre { .. } => "z",
    }
}

#[derive(Serialize)]
struct EopLevel {
    nu: i64,
    n: usize,
    #[serde(serialize_with = "ser_rational")]
    energy: Rational,
    #[serde(serialize_with = "ser_poly")]
    coeffs: Poly,
    ode_residual_zero: bool,
}

#[derive(Serialize)]
struct EopPayload<'a> {
    params: &'a eopsi::extensions::ExtensionParams,
    family: eopsi::extensions::ExtensionFamily,
    variable: &'static str,
    levels: Vec<EopLevel>,
}

fn eop(
    case: &CaseArgs,
    count: usize,
    nu: Option<i64>,
    out: &OutArgs,
    io: &mut Io<'_>,
) -> Result<(), CliError> {
    let spec = cases::extension(case)?;
    let nus = match nu {
        Some(nu) => vec![nu],
        None => spec.spectrum.first_nus(count),
    };
    let mut levels = Vec::with_capacity(nus.len());
    for nu in nus {
        let y = spec.eop(nu)?;
        let ode_residual_zero = spec.ode_residual(&y).is_zero();
        levels.push(EopLevel {
            nu,
            n: y.n,
            energy: spec.energy(nu),
            coeffs: y.coeffs,
            ode_residual_zero,
        });
    }
    let var = variable(&spec);
    let body = match format(out, Format::Text) {
        Format::Json => to_json(
            "eop",
            &EopPayload {
                params: &spec.params,
                family: spec.family,
                variable: var,
                levels: levels.iter().map(clone_level).collect(),
            },
        ),
        Format::Text => {
            let mut s = String::new();
            for l in &levels {
                let _ = writeln!(
                    s,
                    "nu = {}  n = {}  E = {}  y({var}) = {}",
                    l.nu,
                    l.n,
                    render(&l.energy),
                    l.coeffs.display_in(var)
                );
            }
            s
        }
        f => return Err(unsupported(f, "eop")),
    };
    emit(out, io, &body)?;
    if let Some(l) = levels.iter().find(|l| !l.ode_residual_zero) {
        return Err(CliError::Verification(format!(
            "EOP of level nu = {} does not solve its differential equation",
            l.nu
        )));
    }
    Ok(())
}

fn clone_level(l: &EopLevel) -> EopLevel {
    EopLevel {
        nu: l.nu,
        n: l.n,
        energy: l.energy.clone(),
        coeffs: l.coeffs.clone(),
        ode_residual_zero: l.ode_residual_zero,
    }
}

fn extend(case: &CaseArgs, out: &OutArgs, io: &mut Io<'_>) -> Result<(), CliError> {
    let spec = cases::extension(case)?;
    let body = match format(out, Format::Text) {
        Format::Json => to_json("extension", &spec.to_json_value()),
        Format::Text => extension_text(&spec),
        f => return Err(unsupported(f, "extend")),
    };
    emit(out, io, &body)
}

fn extension_text(spec: &ExtensionSpec) -> String {
    let var = variable(spec);
    let full = spec.potential.full();
    let mut s = String::new();
    let _ = writeln!(s, "family: {:?}", spec.family);
    let _ = writeln!(s, "parameters: {}", serde_json::to_string(&spec.params).unwrap_or_default());
    if let Some(alpha) = &spec.alpha {
        let _ = writeln!(s, "alpha: {}", render(alpha));
    }
    let _ = writeln!(s, "denominator({var}): {}", spec.denominator.display_in(var));
    let _ = writeln!(s, "potential: ({}) / ({})", full.num(), full.den());
    let nus = match spec.spectrum.singlet {
        Some(k) => format!("nu in {{{k}, 0, 1, 2, ...}}"),
        None => "nu in {0, 1, 2, ...}".to_string(),
    };
    let _ = writeln!(s, "spectrum: E = 2 nu + {}, {nus}", render(&spec.spectrum.base));
    let energies: Vec<String> = spec.factorization_energies.iter().map(render).collect();
    let _ = writeln!(s, "factorization energies: {}", energies.join(", "));
    let _ = writeln!(s, "f(H) = {}", factored(&spec.f, "H"));
    let _ = writeln!(s, "P(H) = {}", factored(&spec.ladder_p, "H"));
    let _ = writeln!(
        s,
        "supercharge order: {}, ladder order: {}",
        spec.supercharge_order(),
        spec.base_ladder.order() + 2 * spec.supercharge_order()
    );
    s
}

#[derive(Serialize)]
struct RepsPayload<'a> {
    case: Case2D,
    params: &'a SystemParams,
    p_max: u64,
    require_physical: bool,
    #[serde(serialize_with = "ser_rational")]
    lambda: Rational,
    integral_orders: (usize, usize, usize),
    #[serde(flatten)]
    enumeration: &'a Enumeration,
}

fn p_text(p: PRange) -> String {
    match p {
        PRange::All => "p in N".to_string(),
        PRange::Value(v) => format!("p = {v}"),
    }
}

fn reps_text(case: Case2D, params: &SystemParams, en: &Enumeration) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "case {case} {}", serde_json::to_string(params).unwrap_or_default());
    let _ = writeln!(s, "Phi(E, u, x) = {}", en.phi);
    let _ = writeln!(s, "branches:");
    for b in &en.branches {
        let _ = writeln!(s, "  {b}");
    }
    let _ = writeln!(s, "solutions:");
    for (i, sol) in en.solutions.iter().enumerate() {
        let _ = write!(
            s,
            "  #{} u{}  {}  E = {}  Phi = {}",
            i + 1,
            sol.branch.index,
            p_text(sol.p),
            sol.energy,
            sol.phi
        );
        if !sol.duplicate_phi_with.is_empty() {
            let same: Vec<String> = sol
                .duplicate_phi_with
                .iter()
                .map(|j| format!("#{}", j + 1))
                .collect();
            let _ = write!(s, "  (same Phi as {})", same.join(", "));
        }
        s.push('\n');
    }
    let _ = writeln!(s, "diagnostics:");
    for d in &en.diagnostics {
        let _ = writeln!(
            s,
            "  u{}: {} (candidates {}, positivity {}, spectrum {}, energy-independent {})",
            d.branch.index,
            d.verdict(),
            d.candidates,
            d.rejected_positivity,
            d.rejected_spectrum,
            d.unconstrained.len()
        );
    }
    s
}

fn enumerate(
    case: &CaseArgs,
    p_max: u64,
    require_physical: bool,
) -> Result<(eopsi::superalg::System2D, Enumeration), CliError> {
    let (case, params) = cases::system(case)?;
    let sys = build_system(case, &params)?;
    let en = enumerate_reps(
        &sys,
        &EnumOptions {
            p_max,
            require_physical,
        },
    )?;
    Ok((sys, en))
}

fn reps(
    case: &CaseArgs,
    p_max: u64,
    require_physical: bool,
    out: &OutArgs,
    io: &mut Io<'_>,
) -> Result<(), CliError> {
    let (sys, en) = enumerate(case, p_max, require_physical)?;
    let body = match format(out, Format::Text) {
        Format::Json => to_json(
            "reps",
            &RepsPayload {
                case: sys.case,
                params: &sys.params,
                p_max,
                require_physical,
                lambda: sys.lambda(),
                integral_orders: sys.integral_orders(),
                enumeration: &en,
            },
        ),
        Format::Text => reps_text(sys.case, &sys.params, &en),
        f => return Err(unsupported(f, "reps")),
    };
    emit(out, io, &body)
}

#[derive(Serialize)]
struct HolesPayload<'a> {
    case: Case2D,
    params: &'a SystemParams,
    p_max: u64,
    #[serde(flatten)]
    report: &'a HoleReport,
}

fn state_list(states: &[(i64, i64)]) -> String {
    let parts: Vec<String> = states.iter().map(|(a, b)| format!("({a}, {b})")).collect();
    parts.join(" ")
}

fn holes(
    case: &CaseArgs,
    emax: &str,
    p_max: u64,
    out: &OutArgs,
    io: &mut Io<'_>,
) -> Result<(), CliError> {
    let e_max = parse_rational(emax)
        .ok_or_else(|| CliError::Usage(format!("--emax expects an integer or p/q, got {emax:?}")))?;
    let (sys, en) = enumerate(case, p_max, true)?;
    let report = detect_holes(&sys, &en.solutions, &e_max);
    let body = match format(out, Format::Text) {
        Format::Json => to_json(
            "holes",
            &HolesPayload {
                case: sys.case,
                params: &sys.params,
                p_max,
                report: &report,
            },
        ),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "E  physical  algebraic  uncovered");
            for l in &report.levels {
                let _ = writeln!(
                    s,
                    "{}  {}  {}  {}",
                    render(&l.energy),
                    l.physical_degeneracy,
                    l.algebraic_degeneracy,
                    state_list(&l.uncovered)
                );
            }
            s
        }
        f => return Err(unsupported(f, "holes")),
    };
    emit(out, io, &body)
}

fn grid(args: &GridArgs, half_line: bool, default_points: usize) -> Result<GridSpec, CliError> {
    let (a, b) = match &args.domain {
        None if half_line => (0.0, 20.0),
        None => (-12.0, 12.0),
        Some(text) => {
            let parsed: Option<(f64, f64)> = text.split_once(',').and_then(|(a, b)| {
                Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
            });
            parsed.ok_or_else(|| {
                CliError::Usage(format!("--domain expects a,b with two numbers, got {text:?}"))
            })?
        }
    };
    Ok(GridSpec::new(a, b, args.points.unwrap_or(default_points))?)
}

/// `(potential, exact levels, default tolerance)` of a 1D problem.
fn exact_levels(problem: &Problem, k: usize) -> Result<(Vec<Rational>, f64), CliError> {
    Ok(match problem {
        Problem::Oscillator => ((0..k as i64).map(|nu| int(2 * nu + 1)).collect(), 1e-5),
        Problem::Radial(l) => (
            (0..k as i64).map(|nu| int(2 * nu) + l + rat(3, 2)).collect(),
            1e-3,
        ),
        Problem::Extension(p) => {
            let spec = eopsi::extensions::build_extension(p)?;
            let levels = spec
                .spectrum
                .first_nus(k)
                .into_iter()
                .map(|nu| spec.energy(nu))
                .collect();
            let tol = if spec.potential.base == eopsi::extensions::BasePotential::Oscillator {
                1e-4
            } else {
                1e-3
            };
            (levels, tol)
        }
    })
}

#[derive(Serialize)]
struct SpectrumPayload<'a> {
    case: &'a str,
    #[serde(serialize_with = "ser_f64")]
    tolerance: f64,
    passed: bool,
    #[serde(flatten)]
    report: &'a EigReport,
}

fn verify_spectrum(
    case: &CaseArgs,
    k: usize,
    grid_args: &GridArgs,
    tol: Option<f64>,
    out: &OutArgs,
    io: &mut Io<'_>,
) -> Result<(), CliError> {
    let problem = cases::problem(case)?;
    let (pot, _) = problem.potential()?;
    let grid = grid(grid_args, pot.half_line(), 3000)?;
    let (levels, default_tol) = exact_levels(&problem, k)?;
    let tol = tol.unwrap_or(default_tol);
    let report = fd_eigs(&pot, &grid, k)?.with_analytic(&levels);
    let passed = report.within(tol);
    let body = match format(out, Format::Text) {
        Format::Json => to_json(
            "verify-spectrum",
            &SpectrumPayload {
                case: &case.case,
                tolerance: tol,
                passed,
                report: &report,
            },
        ),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "level  computed  exact  abs_error");
            for i in 0..report.computed.len() {
                let _ = writeln!(
                    s,
                    "{i}  {}  {}  {}",
                    float_text(report.computed[i]),
                    float_text(report.analytic[i]),
                    float_text(report.abs_errors[i])
                );
            }
            let _ = writeln!(
                s,
                "tolerance {}: {}",
                float_text(tol),
                if passed { "ok" } else { "FAILED" }
            );
            s
        }
        f => return Err(unsupported(f, "verify-spectrum")),
    };
    emit(out, io, &body)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "largest eigenvalue error {} exceeds tolerance {}",
            float_text(report.max_abs_error.unwrap_or(f64::NAN)),
            float_text(tol)
        )))
    }
}

#[derive(Serialize)]
struct OrthoPayload<'a> {
    case: &'a str,
    #[serde(serialize_with = "ser_f64")]
    tolerance: f64,
    passed: bool,
    #[serde(flatten)]
    gram: &'a GramReport,
}

fn verify_ortho(
    case: &CaseArgs,
    degrees: Option<&str>,
    count: usize,
    tol: f64,
    out: &OutArgs,
    io: &mut Io<'_>,
) -> Result<(), CliError> {
    let spec = cases::extension(case)?;
    let degrees: Vec<usize> = match degrees {
        Some(text) => text
            .split(',')
            .map(|d| d.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| {
                CliError::Usage(format!("--degrees expects comma-separated integers, got {text:?}"))
            })?,
        None => spec
            .spectrum
            .first_nus(count)
            .into_iter()
            .filter_map(|nu| spec.eop_degree(nu))
            .collect(),
    };
    let gram = ortho_gram(&spec, &degrees, &QuadConfig::default())?;
    let passed = gram.max_offdiag_ratio < tol;
    let body = match format(out, Format::Text) {
        Format::Json => to_json(
            "verify-ortho",
            &OrthoPayload {
                case: &case.case,
                tolerance: tol,
                passed,
                gram: &gram,
            },
        ),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "degrees: {:?}", gram.degrees);
            for row in &gram.matrix {
                let cells: Vec<String> = row.iter().map(|v| float_text(*v)).collect();
                let _ = writeln!(s, "{}", cells.join("  "));
            }
            let _ = writeln!(
                s,
                "max off-diagonal ratio {} (tolerance {}): {}",
                float_text(gram.max_offdiag_ratio),
                float_text(tol),
                if passed { "ok" } else { "FAILED" }
            );
            s
        }
        f => return Err(unsupported(f, "verify-ortho")),
    };
    emit(out, io, &body)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Verification(format!(
            "off-diagonal ratio {} is not below {}",
            float_text(gram.max_offdiag_ratio),
            float_text(tol)
        )))
    }
}

#[derive(Serialize)]
struct AlgebraPayload<'a> {
    params: &'a eopsi::extensions::ExtensionParams,
    family: eopsi::extensions::ExtensionFamily,
    supercharge_order: usize,
    passed: bool,
    #[serde(flatten)]
    identities: &'a eopsi::extensions::IdentityReport,
}

fn verify_algebra(case: &CaseArgs, out: &OutArgs, io: &mut Io<'_>) -> Result<(), CliError> {
    let spec = cases::extension(case)?;
    let report = spec.check_identities();
    let passed = report.all_hold();
    let body = match format(out, Format::Text) {
        Format::Json => to_json(
            "verify-algebra",
            &AlgebraPayload {
                params: &spec.params,
                family: spec.family,
                supercharge_order: spec.supercharge_order(),
                passed,
                identities: &report,
            },
        ),
        Format::Text => {
            let mark = |b: bool| if b { "ok" } else { "FAILED" };
            let mut s = String::new();
            let _ = writeln!(s, "A H+ = H- A: {}", mark(report.intertwining));
            let _ = writeln!(s, "A+A = f(H+): {}", mark(report.factorization_plus));
            let _ = writeln!(s, "A A+ = f(H-): {}", mark(report.factorization_minus));
            let _ = writeln!(
                s,
                "[H-, b] = -2 b, order {}: {}",
                report.ladder_order,
                mark(report.lowering)
            );
            s
        }
        f => return Err(unsupported(f, "verify-algebra")),
    };
    emit(out, io, &body)?;
    if passed {
        Ok(())
    } else {
        Err(CliError::Verification(
            "an operator identity does not hold exactly".to_string(),
        ))
    }
}

#[derive(Serialize)]
struct SamplesPayload<'a> {
    case: &'a str,
    grid: GridSpec,
    samples: Vec<Sample>,
}

#[derive(Serialize)]
struct Sample {
    #[serde(serialize_with = "ser_f64")]
    x: f64,
    #[serde(serialize_with = "ser_f64")]
    v: f64,
}

fn export_potential(
    case: &CaseArgs,
    grid_args: &GridArgs,
    out: &OutArgs,
    io: &mut Io<'_>,
) -> Result<(), CliError> {
    let (pot, _) = cases::problem(case)?.potential()?;
    let grid = grid(grid_args, pot.half_line(), 1000)?;
    let samples = pot.sample(&grid)?;
    let body = match format(out, Format::Csv) {
        Format::Csv | Format::Text => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| CliError::Io {
                path: "<csv>".into(),
                source: std::io::Error::other(e),
            };
            w.write_record(["x", "V"]).map_err(csv_err)?;
            for (x, v) in &samples {
                w.write_record([float_text(*x), float_text(*v)]).map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io {
                path: "<csv>".into(),
                source: std::io::Error::other(e.to_string()),
            })?;
            String::from_utf8(bytes).expect("ascii csv")
        }
        Format::Json => to_json(
            "potential",
            &SamplesPayload {
                case: &case.case,
                grid,
                samples: samples.iter().map(|&(x, v)| Sample { x, v }).collect(),
            },
        ),
    };
    emit(out, io, &body)
}
