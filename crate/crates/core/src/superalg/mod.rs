//! Two-dimensional superintegrable systems built from pairs of 1D
//! Hamiltonians with polynomial Heisenberg algebras, their structure
//! functions and the finite-dimensional unitary representations.

mod holes;
mod reps;

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extensions::{
    build_hermite_extension, build_laguerre2_extension, build_laguerre_extension, AxisSpectrum,
    ExtensionSpec, LaguerreCase,
};
use crate::diffop::FactoredPoly;
use crate::ratpoly::{int, render, Rational};
use crate::report::ser_rational;

pub use holes::{detect_holes, HoleReport, LevelReport};
pub use reps::{
    enumerate_reps, BranchReport, EnergyForm, EnumOptions, Enumeration, PFactor,
    PRange, ReducedPhi, RepSolution, StateForm, UnconstrainedBranch,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Case2D {
    H1,
    H2,
    LagI,
    LagII,
    LagIII,
    Lag2,
}

impl Case2D {
    pub fn parse(s: &str) -> Option<Case2D> {
        Some(match s.to_ascii_lowercase().as_str() {
            "h1" => Case2D::H1,
            "h2" => Case2D::H2,
            "lagi" | "lag1" => Case2D::LagI,
            "lagii" => Case2D::LagII,
            "lagiii" => Case2D::LagIII,
            "lag2" => Case2D::Lag2,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Case2D::H1 => "H1",
            Case2D::H2 => "H2",
            Case2D::LagI => "LagI",
            Case2D::LagII => "LagII",
            Case2D::LagIII => "LagIII",
            Case2D::Lag2 => "Lag2",
        }
    }
}

impl fmt::Display for Case2D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Parameters of a 2D case; unused fields are ignored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SystemParams {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m1: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m2: Option<usize>,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "crate::report::ser_opt_rational"
    )]
    pub l: Option<Rational>,
}

impl SystemParams {
    fn need_m(&self, name: &str) -> Result<usize> {
        self.m
            .ok_or_else(|| Error::InvalidArgument(format!("case {name} requires m")))
    }

    fn need_m12(&self, name: &str) -> Result<(usize, usize)> {
        match (self.m1, self.m2) {
            (Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::InvalidArgument(format!("case {name} requires m1 and m2"))),
        }
    }

    fn need_l(&self, name: &str) -> Result<Rational> {
        self.l
            .clone()
            .ok_or_else(|| Error::InvalidArgument(format!("case {name} requires l")))
    }
}

/// One axis of a 2D system.
#[derive(Clone, Debug)]
pub enum AxisComponent {
    Oscillator,
    Extension(Box<ExtensionSpec>),
}

impl AxisComponent {
    pub fn spectrum(&self) -> AxisSpectrum {
        match self {
            AxisComponent::Oscillator => AxisSpectrum::oscillator(),
            AxisComponent::Extension(s) => s.spectrum.clone(),
        }
    }

    /// Polynomial `P` of the axis ladder, `a†a = P(H)`.
    pub fn ladder_polynomial(&self) -> FactoredPoly {
        match self {
            AxisComponent::Oscillator => FactoredPoly::monic(vec![int(1)]),
            AxisComponent::Extension(s) => s.ladder_p.clone(),
        }
    }

    /// Order of the axis lowering operator.
    pub fn ladder_order(&self) -> usize {
        match self {
            AxisComponent::Oscillator => 1,
            AxisComponent::Extension(s) => s.base_ladder.order() + 2 * s.supercharge_order(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct System2D {
    pub case: Case2D,
    pub params: SystemParams,
    pub hx: AxisComponent,
    pub hy: AxisComponent,
    pub lambda_x: Rational,
    pub lambda_y: Rational,
    pub n1: usize,
    pub n2: usize,
    pub q: FactoredPoly,
    pub s: FactoredPoly,
}

impl System2D {
    /// `lambda = n1 lambda_x = n2 lambda_y`.
    pub fn lambda(&self) -> Rational {
        &self.lambda_x * int(self.n1 as i64)
    }

    pub fn x_spectrum(&self) -> AxisSpectrum {
        self.hx.spectrum()
    }

    pub fn y_spectrum(&self) -> AxisSpectrum {
        self.hy.spectrum()
    }

    /// Shift of `K = (H_x - H_y)/(2 lambda)` under `I+ = a_x†^n1 a_y^n2`,
    /// which raises `H_x` by `n1 lambda_x` and lowers `H_y` by `n2 lambda_y`.
    pub fn k_shift(&self) -> Rational {
        let dx = &self.lambda_x * int(self.n1 as i64);
        let dy = &self.lambda_y * int(self.n2 as i64);
        (dx + dy) / (int(2) * self.lambda())
    }

    /// Orders of `K`, `I-` and `I+`.
    pub fn integral_orders(&self) -> (usize, usize, usize) {
        let k = self.hx.ladder_order() * self.n1 + self.hy.ladder_order() * self.n2;
        (2, k, k)
    }
}

fn extension(spec: ExtensionSpec) -> AxisComponent {
    AxisComponent::Extension(Box::new(spec))
}

pub fn build_system(case: Case2D, params: &SystemParams) -> Result<System2D> {
    let name = case.name();
    let (hx, hy) = match case {
        Case2D::H1 => {
            let m = params.need_m(name)?;
            (extension(build_hermite_extension(m)?), AxisComponent::Oscillator)
        }
        Case2D::H2 => {
            let (m1, m2) = params.need_m12(name)?;
            (
                extension(build_hermite_extension(m1)?),
                extension(build_hermite_extension(m2)?),
            )
        }
        Case2D::LagI | Case2D::LagII | Case2D::LagIII => {
            let l = params.need_l(name)?;
            let m = params.need_m(name)?;
            let lc = match case {
                Case2D::LagI => LaguerreCase::I,
                Case2D::LagII => LaguerreCase::II,
                _ => LaguerreCase::III,
            };
            (extension(build_laguerre_extension(lc, &l, m)?), AxisComponent::Oscillator)
        }
        Case2D::Lag2 => {
            let l = params.need_l(name)?;
            let (m1, m2) = params.need_m12(name)?;
            (extension(build_laguerre2_extension(&l, m1, m2)?), AxisComponent::Oscillator)
        }
    };
    let q = hx.ladder_polynomial();
    let s = hy.ladder_polynomial();
    Ok(System2D {
        case,
        params: params.clone(),
        hx,
        hy,
        lambda_x: int(2),
        lambda_y: int(2),
        n1: 1,
        n2: 1,
        q,
        s,
    })
}

/// `e E + x X + u U + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AffineForm {
    #[serde(serialize_with = "ser_rational")]
    pub e: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub x: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub u: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational,
}

impl AffineForm {
    pub fn new(e: Rational, x: Rational, u: Rational, c: Rational) -> Self {
        AffineForm { e, x, u, c }
    }

    pub fn eval(&self, e: &Rational, x: &Rational, u: &Rational) -> Rational {
        &self.e * e + &self.x * x + &self.u * u + &self.c
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_affine(f, &[(&self.e, "E"), (&self.x, "x"), (&self.u, "u")], &self.c)
    }
}

pub(crate) fn write_affine(
    f: &mut fmt::Formatter<'_>,
    terms: &[(&Rational, &str)],
    constant: &Rational,
) -> fmt::Result {
    let mut first = true;
    for (coef, var) in terms {
        if coef.is_zero() {
            continue;
        }
        let neg = **coef < Rational::zero();
        let mag = if neg { -(*coef).clone() } else { (*coef).clone() };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        if mag.is_one() {
            write!(f, "{var}")?;
        } else {
            write!(f, "{}{var}", render(&mag))?;
        }
    }
    if first {
        return write!(f, "{}", render(constant));
    }
    if !constant.is_zero() {
        let neg = *constant < Rational::zero();
        let mag = if neg { -constant.clone() } else { constant.clone() };
        write!(f, " {} {}", if neg { '-' } else { '+' }, render(&mag))?;
    }
    Ok(())
}

/// `Phi(E, u, x) = constant * prod factors`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureFunction {
    #[serde(serialize_with = "ser_rational")]
    pub constant: Rational,
    pub factors: Vec<AffineForm>,
}

impl fmt::Display for StructureFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(&self.constant))?;
        for fac in &self.factors {
            write!(f, "({fac})")?;
        }
        Ok(())
    }
}

impl StructureFunction {
    pub fn eval(&self, e: &Rational, u: &Rational, x: &Rational) -> Rational {
        self.factors
            .iter()
            .fold(self.constant.clone(), |acc, f| acc * f.eval(e, x, u))
    }
}

/// `F(K, H) = prod_i Q(H/2 + lambda K - (n1 - i) lambda_x) prod_j S(H/2 - lambda K + j lambda_y)`
/// with `K = x + u`.
pub fn structure_function(sys: &System2D) -> StructureFunction {
    let lam = sys.lambda();
    let half = Rational::new(1.into(), 2.into());
    let mut factors = Vec::new();
    let mut constant = Rational::one();
    for i in 1..=sys.n1 {
        let shift = &sys.lambda_x * int((sys.n1 - i) as i64);
        constant *= &sys.q.constant;
        for r in &sys.q.roots {
            factors.push(AffineForm::new(half.clone(), lam.clone(), lam.clone(), -(&shift + r)));
        }
    }
    for j in 1..=sys.n2 {
        let shift = &sys.lambda_y * int(j as i64);
        constant *= &sys.s.constant;
        for r in &sys.s.roots {
            factors.push(AffineForm::new(half.clone(), -lam.clone(), -lam.clone(), &shift - r));
        }
    }
    StructureFunction { constant, factors }
}

/// `u = e E + c`, the root of one factor of `Phi(E, u, 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UBranch {
    /// 1-based label in factor order.
    pub index: usize,
    pub factor: usize,
    #[serde(serialize_with = "ser_rational")]
    pub e: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational,
}

impl UBranch {
    pub fn eval(&self, energy: &Rational) -> Rational {
        &self.e * energy + &self.c
    }
}

impl fmt::Display for UBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{} = ", self.index)?;
        write_affine(f, &[(&self.e, "E")], &self.c)
    }
}

/// One branch per factor that can vanish at `x = 0` through `u`.
pub fn u_roots(phi: &StructureFunction) -> Result<Vec<UBranch>> {
    let mut out = Vec::new();
    for (k, f) in phi.factors.iter().enumerate() {
        if f.u.is_zero() {
            if f.e.is_zero() && !f.c.is_zero() {
                return Err(Error::NoRootBranch(f.to_string()));
            }
            continue;
        }
        out.push(UBranch {
            index: out.len() + 1,
            factor: k,
            e: -(&f.e / &f.u),
            c: -(&f.c / &f.u),
        });
    }
    Ok(out)
}
