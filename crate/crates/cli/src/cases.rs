//! Case names and the flags each one takes.

use eopsi::extensions::{build_extension, ExtensionParams, ExtensionSpec, LaguerreCase};
use eopsi::numverify::NumericPotential;
use eopsi::ratpoly::parse_rational;
use eopsi::superalg::{Case2D, SystemParams};
use eopsi::Rational;

use crate::args::CaseArgs;
use crate::CliError;

/// A 1D problem: an extension or one of the two starting potentials.
#[derive(Debug, Clone)]
pub enum Problem {
    Extension(ExtensionParams),
    Oscillator,
    Radial(Rational),
}

pub const PROBLEM_CASES: &str = "hermite-ext, lag-i, lag-ii, lag-iii, lag2, oscillator, radial";
pub const SYSTEM_CASES: &str = "H1, H2, LagI, LagII, LagIII, Lag2";

#[derive(Clone, Copy, PartialEq, Eq)]
enum Flag {
    M,
    M1,
    M2,
    L,
}

impl Flag {
    fn name(self) -> &'static str {
        match self {
            Flag::M => "--m",
            Flag::M1 => "--m1",
            Flag::M2 => "--m2",
            Flag::L => "--l",
        }
    }

    fn given(self, a: &CaseArgs) -> bool {
        match self {
            Flag::M => a.m.is_some(),
            Flag::M1 => a.m1.is_some(),
            Flag::M2 => a.m2.is_some(),
            Flag::L => a.l.is_some(),
        }
    }
}

/// Every flag in `needed` must be present and no other.
fn check_flags(a: &CaseArgs, needed: &[Flag]) -> Result<(), CliError> {
    for f in [Flag::M, Flag::M1, Flag::M2, Flag::L] {
        let wanted = needed.contains(&f);
        if wanted && !f.given(a) {
            return Err(CliError::Usage(format!("case {} requires {}", a.case, f.name())));
        }
        if !wanted && f.given(a) {
            return Err(CliError::Usage(format!("case {} does not take {}", a.case, f.name())));
        }
    }
    Ok(())
}

fn l_value(a: &CaseArgs) -> Result<Rational, CliError> {
    let text = a.l.as_deref().unwrap_or_default();
    parse_rational(text)
        .ok_or_else(|| CliError::Usage(format!("--l expects an integer or p/q, got {text:?}")))
}

pub fn problem(a: &CaseArgs) -> Result<Problem, CliError> {
    use Flag::*;
    let laguerre = |case| -> Result<Problem, CliError> {
        check_flags(a, &[M, L])?;
        Ok(Problem::Extension(ExtensionParams::Laguerre {
            case,
            l: l_value(a)?,
            m: a.m.unwrap_or_default(),
        }))
    };
    match a.case.to_ascii_lowercase().as_str() {
        "hermite-ext" => {
            check_flags(a, &[M])?;
            Ok(Problem::Extension(ExtensionParams::Hermite {
                m: a.m.unwrap_or_default(),
            }))
        }
        "lag-i" => laguerre(LaguerreCase::I),
        "lag-ii" => laguerre(LaguerreCase::II),
        "lag-iii" => laguerre(LaguerreCase::III),
        "lag2" => {
            check_flags(a, &[L, M1, M2])?;
            Ok(Problem::Extension(ExtensionParams::Laguerre2 {
                l: l_value(a)?,
                m1: a.m1.unwrap_or_default(),
                m2: a.m2.unwrap_or_default(),
            }))
        }
        "oscillator" => {
            check_flags(a, &[])?;
            Ok(Problem::Oscillator)
        }
        "radial" => {
            check_flags(a, &[L])?;
            Ok(Problem::Radial(l_value(a)?))
        }
        _ => Err(CliError::Usage(format!(
            "unknown case {:?}; expected one of {PROBLEM_CASES}",
            a.case
        ))),
    }
}

/// The extension of a case; the bare potentials are rejected.
pub fn extension(a: &CaseArgs) -> Result<ExtensionSpec, CliError> {
    match problem(a)? {
        Problem::Extension(p) => Ok(build_extension(&p)?),
        _ => Err(CliError::Usage(format!(
            "case {} is not an extension; expected one of hermite-ext, lag-i, lag-ii, lag-iii, lag2",
            a.case
        ))),
    }
}

impl Problem {
    pub fn potential(&self) -> Result<(NumericPotential, Option<ExtensionSpec>), CliError> {
        Ok(match self {
            Problem::Extension(p) => {
                let spec = build_extension(p)?;
                (NumericPotential::from_record(&spec.potential), Some(spec))
            }
            Problem::Oscillator => (NumericPotential::oscillator(), None),
            Problem::Radial(l) => {
                if *l < Rational::from_integer(0.into()) {
                    return Err(eopsi::Error::constraint("l >= 0", format!("l = {l}")).into());
                }
                (NumericPotential::radial(l), None)
            }
        })
    }
}

pub fn system(a: &CaseArgs) -> Result<(Case2D, SystemParams), CliError> {
    use Flag::*;
    let case = Case2D::parse(&a.case).ok_or_else(|| {
        CliError::Usage(format!("unknown case {:?}; expected one of {SYSTEM_CASES}", a.case))
    })?;
    let needed: &[Flag] = match case {
        Case2D::H1 => &[M],
        Case2D::H2 => &[M1, M2],
        Case2D::LagI | Case2D::LagII | Case2D::LagIII => &[M, L],
        Case2D::Lag2 => &[L, M1, M2],
    };
    check_flags(a, needed)?;
    let l = if a.l.is_some() { Some(l_value(a)?) } else { None };
    Ok((
        case,
        SystemParams {
            m: a.m,
            m1: a.m1,
            m2: a.m2,
            l,
        },
    ))
}
