//! Rational extensions of the oscillator and the radial oscillator, their
//! spectra, exceptional orthogonal polynomials and weights.

use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::diffop::{
    check_factorization, check_intertwining, commutator, compose_ladder, first_order_supercharge,
    oscillator_ladder, partner_ladder_polynomial, radial_ladder, second_order_supercharge, DiffOp, FactoredPoly, LadderSpec,
};
use crate::error::{Error, Result};
use crate::families::{
    hermite, laguerre, oscillator_potential, pseudo_hermite, radial_potential, seed_solution,
    SeedFamily, SeedSolution,
};
use crate::ratpoly::{int, rat, render, to_f64, Poly, RatFunc, Rational};
use crate::report::{ser_opt_rational, ser_poly, ser_rational, ser_rationals};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum ExtensionFamily {
    HermiteExt,
    LagExtI,
    LagExtII,
    LagExtIII,
    #[serde(rename = "LagExt2_I_II")]
    LagExt2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LaguerreCase {
    I,
    II,
    III,
}

impl LaguerreCase {
    pub fn seed_family(self) -> SeedFamily {
        match self {
            LaguerreCase::I => SeedFamily::LaguerreI,
            LaguerreCase::II => SeedFamily::LaguerreII,
            LaguerreCase::III => SeedFamily::LaguerreIII,
        }
    }

    pub fn family(self) -> ExtensionFamily {
        match self {
            LaguerreCase::I => ExtensionFamily::LagExtI,
            LaguerreCase::II => ExtensionFamily::LagExtII,
            LaguerreCase::III => ExtensionFamily::LagExtIII,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum ExtensionParams {
    Hermite {
        m: usize,
    },
    Laguerre {
        case: LaguerreCase,
        #[serde(serialize_with = "ser_rational")]
        l: Rational,
        m: usize,
    },
    Laguerre2 {
        #[serde(serialize_with = "ser_rational")]
        l: Rational,
        m1: usize,
        m2: usize,
    },
}

/// Levels `base + 2 nu`, `nu` in `{singlet} ∪ {0, 1, 2, ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxisSpectrum {
    #[serde(serialize_with = "ser_rational")]
    pub base: Rational,
    pub singlet: Option<i64>,
}

impl AxisSpectrum {
    pub fn oscillator() -> Self {
        AxisSpectrum {
            base: int(1),
            singlet: None,
        }
    }

    pub fn energy(&self, nu: i64) -> Rational {
        &self.base + int(2 * nu)
    }

    pub fn lowest_nu(&self) -> i64 {
        self.singlet.unwrap_or(0)
    }

    pub fn is_allowed(&self, nu: i64) -> bool {
        nu >= 0 || self.singlet == Some(nu)
    }

    /// The `nu` with `energy(nu) == e`, if `e` is a level.
    pub fn nu_of(&self, e: &Rational) -> Option<i64> {
        let half = (e - &self.base) / int(2);
        if !half.is_integer() {
            return None;
        }
        let nu = half.to_integer().to_i64()?;
        self.is_allowed(nu).then_some(nu)
    }

    /// The first `count` allowed `nu`, ascending.
    pub fn first_nus(&self, count: usize) -> Vec<i64> {
        self.singlet
            .into_iter()
            .chain(0..)
            .take(count)
            .collect()
    }

    /// All allowed `nu` with `energy(nu) <= e_max`.
    pub fn nus_up_to(&self, e_max: &Rational) -> Vec<i64> {
        self.singlet
            .into_iter()
            .chain(0..)
            .take_while(|&nu| &self.energy(nu) <= e_max)
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum BasePotential {
    /// `x^2`
    Oscillator,
    /// `x^2/4 + l(l+1)/x^2`
    Radial {
        #[serde(serialize_with = "ser_rational")]
        l: Rational,
    },
}

impl BasePotential {
    pub fn potential(&self) -> RatFunc {
        match self {
            BasePotential::Oscillator => oscillator_potential(),
            BasePotential::Radial { l } => radial_potential(l),
        }
    }
}

/// `V = base + rational + constant`, the rational part in `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PotentialRecord {
    pub base: BasePotential,
    pub rational: RatFunc,
    pub constant: Rational,
}

impl PotentialRecord {
    pub fn full(&self) -> RatFunc {
        &(&self.base.potential() + &self.rational) + &RatFunc::constant(self.constant.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum WeightKind {
    /// `exp(-x^2) / den(x)^2` on the real line.
    Gaussian,
    /// `z^alpha exp(-z) / den(z)^2` on `(0, inf)`.
    Laguerre {
        #[serde(serialize_with = "ser_rational")]
        alpha: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightRecord {
    pub kind: WeightKind,
    #[serde(serialize_with = "ser_poly")]
    pub denominator: Poly,
}

impl WeightRecord {
    pub fn eval_f64(&self, t: f64) -> f64 {
        let d = self.denominator.eval_f64(t);
        match &self.kind {
            WeightKind::Gaussian => (-t * t).exp() / (d * d),
            WeightKind::Laguerre { alpha } => {
                (to_f64(alpha) * t.ln() - t).exp() / (d * d)
            }
        }
    }
}

/// An exceptional orthogonal polynomial, in `x` for Hermite and `z` for Laguerre.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EopPolynomial {
    pub family: ExtensionFamily,
    pub nu: i64,
    pub n: usize,
    #[serde(serialize_with = "ser_opt_rational")]
    pub alpha: Option<Rational>,
    #[serde(serialize_with = "ser_poly")]
    pub coeffs: Poly,
}

/// Build the extension described by `params`.
pub fn build_extension(params: &ExtensionParams) -> Result<ExtensionSpec> {
    match params {
        ExtensionParams::Hermite { m } => build_hermite_extension(*m),
        ExtensionParams::Laguerre { case, l, m } => build_laguerre_extension(*case, l, *m),
        ExtensionParams::Laguerre2 { l, m1, m2 } => build_laguerre2_extension(l, *m1, *m2),
    }
}

/// Log-derivative of the ground-state gauge and the polynomial part of the
/// `nu`-th eigenfunction of a starting Hamiltonian.
#[derive(Clone, Debug)]
struct StartingStates {
    gauge: RatFunc,
    /// `None` for the oscillator.
    radial_alpha: Option<Rational>,
}

impl StartingStates {
    fn polynomial(&self, nu: usize) -> Poly {
        match &self.radial_alpha {
            None => hermite(nu),
            Some(a) => laguerre(nu, a, false).at_half_square(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionSpec {
    pub family: ExtensionFamily,
    pub params: ExtensionParams,
    pub l_prime: Option<Rational>,
    /// `l + 1/2` of the target potential (Laguerre families).
    pub alpha: Option<Rational>,
    /// `H_m` in `x`, or `g` in `z`.
    pub denominator: Poly,
    pub potential: PotentialRecord,
    pub spectrum: AxisSpectrum,
    pub weight: WeightRecord,
    pub factorization_energies: Vec<Rational>,
    /// `f` with `A†A = f(H+)`.
    pub f: FactoredPoly,
    /// `P-` of the partner's ladder, `P+(H) f(H - lambda) f(H)`.
    pub ladder_p: FactoredPoly,
    pub h_plus: DiffOp,
    pub h_minus: DiffOp,
    pub a: DiffOp,
    pub a_dagger: DiffOp,
    pub base_ladder: LadderSpec,
    pub seeds: Vec<SeedSolution>,
    /// `n = nu + degree_offset` for non-singlet levels.
    degree_offset: i64,
    states: StartingStates,
}

/// `-2 (g'/g + 2 z (g''/g - (g'/g)^2))` with `z = x^2/2`, as a function of `x`.
pub fn laguerre_rational_part(g: &Poly) -> RatFunc {
    let gd = g.derivative();
    let gdd = gd.derivative();
    let r1 = RatFunc::normalize(gd, g.clone()).expect("g is nonzero");
    let r2 = RatFunc::normalize(gdd, g.clone()).expect("g is nonzero");
    let z = RatFunc::x();
    let inner = &r1 + &(&z.scale(&int(2)) * &(&r2 - &(&r1 * &r1)));
    inner.scale(&int(-2)).compose_poly(&Poly::new(vec![int(0), int(0), rat(1, 2)]))
}

/// `-2 (H''/H - (H'/H)^2)`.
pub fn hermite_rational_part(h: &Poly) -> RatFunc {
    let r1 = RatFunc::normalize(h.derivative(), h.clone()).expect("nonzero");
    let r2 = RatFunc::normalize(h.derivative().derivative(), h.clone()).expect("nonzero");
    (&r2 - &(&r1 * &r1)).scale(&int(-2))
}

fn radial_gauge(l: &Rational) -> RatFunc {
    // d/dx log(x^{l+1} e^{-x^2/4})
    &RatFunc::normalize(Poly::constant(l + int(1)), Poly::x()).unwrap()
        + &RatFunc::from_poly(Poly::new(vec![int(0), rat(-1, 2)]))
}

fn first_order_ladder_p(base: &LadderSpec, f: &FactoredPoly) -> FactoredPoly {
    partner_ladder_polynomial(&base.p, f, &base.lambda)
}

fn consistency(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::ConstructionInconsistency(what.to_string()))
    }
}

pub fn build_hermite_extension(m: usize) -> Result<ExtensionSpec> {
    let seed = seed_solution(SeedFamily::HermitePseudo, None, m)?;
    let (a, a_dagger) = first_order_supercharge(&seed)?;
    let h_plus = DiffOp::hamiltonian(oscillator_potential());
    let q0 = a.coeff(0);
    let h_minus = &h_plus + &DiffOp::multiplication(q0.derivative().scale(&int(2)));
    let denominator = pseudo_hermite(m);
    let potential = PotentialRecord {
        base: BasePotential::Oscillator,
        rational: hermite_rational_part(&denominator),
        constant: int(-2),
    };
    consistency(
        potential.full() == h_minus.coeff(0),
        "partner potential differs from its closed form",
    )?;
    let e = seed.energy.clone();
    let f = FactoredPoly::monic(vec![e.clone()]);
    let base_ladder = oscillator_ladder();
    let ladder_p = first_order_ladder_p(&base_ladder, &f);
    Ok(ExtensionSpec {
        family: ExtensionFamily::HermiteExt,
        params: ExtensionParams::Hermite { m },
        l_prime: None,
        alpha: None,
        denominator: denominator.clone(),
        potential,
        spectrum: AxisSpectrum {
            base: int(1),
            singlet: Some(-(m as i64) - 1),
        },
        weight: WeightRecord {
            kind: WeightKind::Gaussian,
            denominator,
        },
        factorization_energies: vec![e],
        f,
        ladder_p,
        h_plus,
        h_minus,
        a,
        a_dagger,
        base_ladder,
        seeds: vec![seed],
        degree_offset: m as i64 + 1,
        states: StartingStates {
            gauge: RatFunc::from_poly(Poly::from_ints(&[0, -1])),
            radial_alpha: None,
        },
    })
}

pub fn build_laguerre_extension(case: LaguerreCase, l: &Rational, m: usize) -> Result<ExtensionSpec> {
    let alpha = l + rat(1, 2);
    let m_r = int(m as i64);
    if m == 0 {
        return Err(Error::constraint("m >= 1", "m = 0"));
    }
    if !alpha.is_positive() {
        return Err(Error::constraint(
            "alpha = l + 1/2 > 0",
            format!("l = {}", render(l)),
        ));
    }
    if case == LaguerreCase::I && !l.is_positive() {
        return Err(Error::constraint("l > 0", format!("l = {}", render(l))));
    }
    if case != LaguerreCase::I && alpha <= &m_r - int(1) {
        return Err(Error::constraint(
            "alpha > m - 1",
            format!("alpha = {}, m = {m}", render(&alpha)),
        ));
    }
    if case == LaguerreCase::III && m % 2 == 1 {
        return Err(Error::constraint("m even for type III", format!("m = {m}")));
    }
    let (l_prime, constant, denominator) = match case {
        LaguerreCase::I => (l - int(1), int(-1), laguerre(m, &(&alpha - int(1)), true)),
        LaguerreCase::II => (l + int(1), int(1), laguerre(m, &(-&alpha - int(1)), false)),
        LaguerreCase::III => (l + int(1), int(-1), laguerre(m, &(-&alpha - int(1)), true)),
    };
    let seed = seed_solution(case.seed_family(), Some(&l_prime), m)?;
    consistency(
        seed.polynomial_part == denominator,
        "seed polynomial differs from the partner denominator",
    )?;
    let (a, a_dagger) = first_order_supercharge(&seed)?;
    let h_plus = DiffOp::hamiltonian(radial_potential(&l_prime));
    let h_minus = &h_plus + &DiffOp::multiplication(a.coeff(0).derivative().scale(&int(2)));
    let potential = PotentialRecord {
        base: BasePotential::Radial { l: l.clone() },
        rational: laguerre_rational_part(&denominator),
        constant,
    };
    consistency(
        potential.full() == h_minus.coeff(0),
        "partner potential differs from its closed form",
    )?;
    let e = seed.energy.clone();
    let f = FactoredPoly::monic(vec![e.clone()]);
    let base_ladder = radial_ladder(&l_prime);
    let ladder_p = first_order_ladder_p(&base_ladder, &f);
    let (base, singlet, degree_offset) = match case {
        LaguerreCase::I => (alpha.clone(), None, m as i64),
        LaguerreCase::II => (&alpha + int(2), None, m as i64),
        LaguerreCase::III => (&alpha + int(2), Some(-(m as i64) - 1), m as i64 + 1),
    };
    Ok(ExtensionSpec {
        family: case.family(),
        params: ExtensionParams::Laguerre {
            case,
            l: l.clone(),
            m,
        },
        l_prime: Some(l_prime.clone()),
        alpha: Some(alpha.clone()),
        denominator: denominator.clone(),
        potential,
        spectrum: AxisSpectrum { base, singlet },
        weight: WeightRecord {
            kind: WeightKind::Laguerre { alpha },
            denominator,
        },
        factorization_energies: vec![e],
        f,
        ladder_p,
        h_plus,
        h_minus,
        a,
        a_dagger,
        base_ladder,
        seeds: vec![seed],
        degree_offset,
        states: StartingStates {
            gauge: radial_gauge(&l_prime),
            radial_alpha: Some(&l_prime + rat(1, 2)),
        },
    })
}

pub fn build_laguerre2_extension(l: &Rational, m1: usize, m2: usize) -> Result<ExtensionSpec> {
    let alpha = l + rat(1, 2);
    if !alpha.is_positive() {
        return Err(Error::constraint(
            "alpha = l + 1/2 > 0",
            format!("l = {}", render(l)),
        ));
    }
    if int(m2 as i64) >= alpha {
        return Err(Error::constraint(
            "m2 < l + 1/2",
            format!("m2 = {m2}, l = {}", render(l)),
        ));
    }
    let s1 = seed_solution(SeedFamily::LaguerreI, Some(l), m1)?;
    let s2 = seed_solution(SeedFamily::LaguerreII, Some(l), m2)?;
    let so = second_order_supercharge(&s1, &s2)?;
    let h_plus = DiffOp::hamiltonian(radial_potential(l));
    let h_minus = &h_plus + &DiffOp::multiplication(so.q1.derivative().scale(&int(2)));
    let potential = PotentialRecord {
        base: BasePotential::Radial { l: l.clone() },
        rational: laguerre_rational_part(&so.g_mu),
        constant: int(0),
    };
    consistency(
        potential.full() == h_minus.coeff(0),
        "partner potential differs from its closed form",
    )?;
    let f = FactoredPoly::monic(vec![so.e1.clone(), so.e2.clone()]);
    let base_ladder = radial_ladder(l);
    let ladder_p = first_order_ladder_p(&base_ladder, &f);
    Ok(ExtensionSpec {
        family: ExtensionFamily::LagExt2,
        params: ExtensionParams::Laguerre2 {
            l: l.clone(),
            m1,
            m2,
        },
        l_prime: Some(l.clone()),
        alpha: Some(alpha.clone()),
        denominator: so.g_mu.clone(),
        potential,
        spectrum: AxisSpectrum {
            base: l + rat(3, 2),
            singlet: None,
        },
        weight: WeightRecord {
            kind: WeightKind::Laguerre { alpha: alpha.clone() },
            denominator: so.g_mu.clone(),
        },
        factorization_energies: vec![so.e1.clone(), so.e2.clone()],
        f,
        ladder_p,
        h_plus,
        h_minus,
        a: so.a,
        a_dagger: so.a_dagger,
        base_ladder,
        seeds: vec![s1, s2],
        degree_offset: so.mu as i64,
        states: StartingStates {
            gauge: radial_gauge(l),
            radial_alpha: Some(alpha),
        },
    })
}

/// Result of the exact operator-identity checks of one extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub intertwining: bool,
    pub factorization_plus: bool,
    pub factorization_minus: bool,
    pub lowering: bool,
    pub ladder_order: usize,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.intertwining && self.factorization_plus && self.factorization_minus && self.lowering
    }
}

impl ExtensionSpec {
    pub fn supercharge_order(&self) -> usize {
        self.a.order().unwrap_or(0)
    }

    /// Partner ladder `b = A a A†`, verified against `[H-, b] = -lambda b`.
    pub fn ladder(&self) -> Result<LadderSpec> {
        let lad = compose_ladder(
            &self.a,
            &self.base_ladder,
            &self.a_dagger,
            &self.f,
            &self.h_minus,
        )?;
        consistency(lad.p == self.ladder_p, "composed ladder polynomial")?;
        Ok(lad)
    }

    /// Exact checks of `A H+ = H- A`, `A†A = f(H+)`, `AA† = f(H-)` and the
    /// partner ladder relation.
    pub fn check_identities(&self) -> IdentityReport {
        let f = self.f.to_poly();
        let intertwining = check_intertwining(&self.a, &self.h_plus, &self.h_minus);
        let factorization_plus = check_factorization(&self.a, &self.a_dagger, &self.h_plus, &f);
        let factorization_minus =
            check_factorization(&self.a_dagger, &self.a, &self.h_minus, &f);
        let b = self.a.compose(&self.base_ladder.op).compose(&self.a_dagger);
        let lowering =
            (&commutator(&self.h_minus, &b) + &b.scale(&self.base_ladder.lambda)).is_zero();
        IdentityReport {
            intertwining,
            factorization_plus,
            factorization_minus,
            lowering,
            ladder_order: b.order().unwrap_or(0),
        }
    }

    /// Degree of the EOP belonging to level `nu`.
    pub fn eop_degree(&self, nu: i64) -> Option<usize> {
        if !self.spectrum.is_allowed(nu) {
            return None;
        }
        if self.spectrum.singlet == Some(nu) {
            return Some(0);
        }
        usize::try_from(nu + self.degree_offset).ok()
    }

    /// Energy of level `nu` of the partner.
    pub fn energy(&self, nu: i64) -> Rational {
        self.spectrum.energy(nu)
    }

    /// EOP of level `nu`, extracted from `A` acting on the starting eigenfunction.
    pub fn eop(&self, nu: i64) -> Result<EopPolynomial> {
        let n = self.eop_degree(nu).ok_or_else(|| {
            Error::InvalidArgument(format!("nu = {nu} is not a level of this extension"))
        })?;
        let coeffs = if self.spectrum.singlet == Some(nu) {
            Poly::one()
        } else {
            self.extract_eop(nu as usize)?
        };
        if coeffs.degree() != Some(n) {
            return Err(Error::ConstructionInconsistency(format!(
                "EOP for nu = {nu} has degree {:?}, expected {n}",
                coeffs.degree()
            )));
        }
        Ok(EopPolynomial {
            family: self.family,
            nu,
            n,
            alpha: self.alpha.clone(),
            coeffs,
        })
    }

    fn extract_eop(&self, nu: usize) -> Result<Poly> {
        let inconsistent =
            |what: &str| Error::ConstructionInconsistency(format!("EOP extraction for nu = {nu}: {what}"));
        let conj = self.a.conjugate(&self.states.gauge);
        let image = conj.apply(&RatFunc::from_poly(self.states.polynomial(nu)));
        let (den_x, gauge_ratio) = match self.family {
            ExtensionFamily::HermiteExt => (self.denominator.clone(), RatFunc::one()),
            _ => {
                let l = self.l_target();
                let lp = self.l_prime.clone().unwrap();
                let shift = (&lp - &l).to_integer().to_i64().unwrap_or(0);
                let ratio = match shift {
                    -1 => RatFunc::recip_poly(&Poly::x())?,
                    1 => RatFunc::x(),
                    _ => RatFunc::one(),
                };
                (self.denominator.at_half_square(), ratio)
            }
        };
        let y = &(&image * &RatFunc::from_poly(den_x)) * &gauge_ratio;
        let y = y.as_poly().cloned().ok_or_else(|| inconsistent("non-polynomial remainder"))?;
        let y = match self.family {
            ExtensionFamily::HermiteExt => y,
            _ => y.even_to_half_square().ok_or_else(|| inconsistent("not even in x"))?,
        };
        if y.is_zero() {
            return Err(inconsistent("annihilated"));
        }
        Ok(y.primitive_positive())
    }

    fn l_target(&self) -> Rational {
        match &self.params {
            ExtensionParams::Hermite { .. } => int(0),
            ExtensionParams::Laguerre { l, .. } | ExtensionParams::Laguerre2 { l, .. } => l.clone(),
        }
    }

    /// Residual of the second-order equation satisfied by the EOP, cleared
    /// of denominators; identically zero for a correct EOP.
    pub fn ode_residual(&self, y: &EopPolynomial) -> Poly {
        let p = &y.coeffs;
        let (d1, d2) = (p.derivative(), p.derivative().derivative());
        let g = &self.denominator;
        let gd = g.derivative();
        let n = int(y.n as i64);
        match self.family {
            ExtensionFamily::HermiteExt => {
                // H y'' - 2 (x H + H') y' + 2 n H y
                let x = Poly::x();
                let t1 = g * &d2;
                let t2 = (&(&x * g) + &gd).scale(&int(-2));
                let t3 = g.scale(&(int(2) * &n));
                &(&t1 + &(&t2 * &d1)) + &(&t3 * p)
            }
            _ => {
                // z g y'' + ((alpha + 1 - z) g - 2 z g') y' + ((z - alpha) g' + z g'') y - (deg g - n) g y
                let alpha = self.alpha.clone().unwrap();
                let z = Poly::x();
                let gdd = gd.derivative();
                let c1 = &(&Poly::new(vec![&alpha + int(1), int(-1)]) * g) - &(&z * &gd).scale(&int(2));
                let c0 = &(&Poly::new(vec![-alpha.clone(), int(1)]) * &gd) + &(&z * &gdd);
                let eig = int(g.degree().unwrap_or(0) as i64) - &n;
                let t = &(&(&(&z * g) * &d2) + &(&c1 * &d1)) + &(&c0 * p);
                &t - &(g * p).scale(&eig)
            }
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(SpecView::from(self)).expect("serializable spec")
    }
}

#[derive(Serialize)]
struct PotentialView {
    base: BasePotential,
    #[serde(serialize_with = "ser_poly")]
    rational_num: Poly,
    #[serde(serialize_with = "ser_poly")]
    rational_den: Poly,
    #[serde(serialize_with = "ser_rational")]
    constant: Rational,
    #[serde(serialize_with = "ser_poly")]
    full_num: Poly,
    #[serde(serialize_with = "ser_poly")]
    full_den: Poly,
}

/// Serialized form of an [`ExtensionSpec`].
#[derive(Serialize)]
pub struct SpecView {
    family: ExtensionFamily,
    params: ExtensionParams,
    #[serde(serialize_with = "ser_opt_rational")]
    l_prime: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    alpha: Option<Rational>,
    denominator_variable: &'static str,
    #[serde(serialize_with = "ser_poly")]
    denominator: Poly,
    potential: PotentialView,
    spectrum: AxisSpectrum,
    spectrum_formula: String,
    weight: WeightRecord,
    #[serde(serialize_with = "ser_rationals")]
    factorization_energies: Vec<Rational>,
    f: FactoredPoly,
    ladder_p: FactoredPoly,
    supercharge_order: usize,
    ladder_order: usize,
}

impl From<&ExtensionSpec> for SpecView {
    fn from(s: &ExtensionSpec) -> Self {
        let full = s.potential.full();
        let nu_range = match s.spectrum.singlet {
            Some(k) => format!("nu in {{{k}, 0, 1, 2, ...}}"),
            None => "nu in {0, 1, 2, ...}".to_string(),
        };
        SpecView {
            family: s.family,
            params: s.params.clone(),
            l_prime: s.l_prime.clone(),
            alpha: s.alpha.clone(),
            denominator_variable: if s.family == ExtensionFamily::HermiteExt { "x" } else { "z" },
            denominator: s.denominator.clone(),
            potential: PotentialView {
                base: s.potential.base.clone(),
                rational_num: s.potential.rational.num().clone(),
                rational_den: s.potential.rational.den().clone(),
                constant: s.potential.constant.clone(),
                full_num: full.num().clone(),
                full_den: full.den().clone(),
            },
            spectrum: s.spectrum.clone(),
            spectrum_formula: format!("E = 2 nu + {}, {nu_range}", render(&s.spectrum.base)),
            weight: s.weight.clone(),
            factorization_energies: s.factorization_energies.clone(),
            f: s.f.clone(),
            ladder_p: s.ladder_p.clone(),
            supercharge_order: s.supercharge_order(),
            ladder_order: s.base_ladder.order() + 2 * s.supercharge_order(),
        }
    }
}

/// One 2D energy level with its `(nu_x, nu_y)` states.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Level {
    #[serde(serialize_with = "ser_rational")]
    pub energy: Rational,
    pub states: Vec<(i64, i64)>,
}

impl Level {
    pub fn degeneracy(&self) -> usize {
        self.states.len()
    }
}

/// All levels `E_x + E_y <= e_max`, ascending, states ordered by `nu_x`.
pub fn physical_spectrum(x: &AxisSpectrum, y: &AxisSpectrum, e_max: &Rational) -> Vec<Level> {
    let y_min = y.energy(y.lowest_nu());
    let mut states: Vec<(Rational, i64, i64)> = Vec::new();
    for nx in x.nus_up_to(&(e_max - &y_min)) {
        let ex = x.energy(nx);
        for ny in y.nus_up_to(&(e_max - &ex)) {
            states.push((&ex + y.energy(ny), nx, ny));
        }
    }
    states.sort();
    let mut levels: Vec<Level> = Vec::new();
    for (e, nx, ny) in states {
        match levels.last_mut() {
            Some(l) if l.energy == e => l.states.push((nx, ny)),
            _ => levels.push(Level {
                energy: e,
                states: vec![(nx, ny)],
            }),
        }
    }
    levels
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermite_m2_potential() {
        let s = build_hermite_extension(2).unwrap();
        // x^2 + 8(2x^2 - 1)/(2x^2 + 1)^2 - 2
        let expect = &RatFunc::from_poly(Poly::from_ints(&[-2, 0, 1]))
            + &RatFunc::normalize(
                Poly::from_ints(&[-8, 0, 16]),
                Poly::from_ints(&[1, 0, 2]).pow(2),
            )
            .unwrap();
        assert_eq!(s.potential.full(), expect);
        assert_eq!(s.energy(-3), int(-5));
        assert_eq!(s.factorization_energies, vec![int(-5)]);
    }

    #[test]
    fn hermite_m0_is_shifted_oscillator() {
        let s = build_hermite_extension(0).unwrap();
        assert_eq!(s.potential.full(), RatFunc::from_poly(Poly::from_ints(&[-2, 0, 1])));
    }

    #[test]
    fn hermite_ladder_polynomial() {
        let s = build_hermite_extension(2).unwrap();
        assert_eq!(s.ladder_p, FactoredPoly::monic(vec![int(1), int(-3), int(-5)]));
        let lad = s.ladder().unwrap();
        assert_eq!(lad.order(), 3);
    }

    #[test]
    fn hermite_eops() {
        let s = build_hermite_extension(2).unwrap();
        assert_eq!(s.eop(-3).unwrap().coeffs, Poly::one());
        // -H2 H1 - 4 H1 H0 = -8x^3 - 12x, normalized
        assert_eq!(s.eop(0).unwrap().coeffs, Poly::from_ints(&[0, 3, 0, 2]));
        let degrees: Vec<usize> = s.spectrum.first_nus(6).iter().map(|&nu| s.eop(nu).unwrap().n).collect();
        assert_eq!(degrees, vec![0, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn odd_hermite_rejected() {
        assert!(matches!(build_hermite_extension(3), Err(Error::SeedHasNodes(_))));
    }

    #[test]
    fn laguerre_case_examples() {
        let s = build_laguerre_extension(LaguerreCase::I, &int(2), 1).unwrap();
        assert_eq!(s.denominator, Poly::new(vec![rat(5, 2), int(1)]));
        assert_eq!(s.energy(0), rat(5, 2));
        assert_eq!(s.potential.constant, int(-1));
        assert_eq!(s.l_prime, Some(int(1)));

        let s = build_laguerre_extension(LaguerreCase::II, &int(2), 1).unwrap();
        assert_eq!(s.energy(0), rat(9, 2));
        assert_eq!(s.potential.constant, int(1));

        let s = build_laguerre_extension(LaguerreCase::III, &int(2), 2).unwrap();
        assert_eq!(s.spectrum.first_nus(3), vec![-3, 0, 1]);
        assert_eq!(s.energy(-3), rat(-3, 2));
    }

    #[test]
    fn laguerre_i_rational_part_in_z() {
        // g = z + a: V_rat = -2 (a - z)/(a + z)^2
        let s = build_laguerre_extension(LaguerreCase::I, &int(2), 1).unwrap();
        let a = rat(5, 2);
        let in_z = RatFunc::normalize(
            Poly::new(vec![a.clone(), int(-1)]).scale(&int(-2)),
            Poly::new(vec![a, int(1)]).pow(2),
        )
        .unwrap();
        let expect = in_z.compose_poly(&Poly::new(vec![int(0), int(0), rat(1, 2)]));
        assert_eq!(s.potential.rational, expect);
    }

    #[test]
    fn laguerre_constraints() {
        assert!(matches!(
            build_laguerre_extension(LaguerreCase::II, &int(1), 3),
            Err(Error::Constraint { constraint: "alpha > m - 1", .. })
        ));
        assert!(matches!(
            build_laguerre_extension(LaguerreCase::III, &int(4), 3),
            Err(Error::Constraint { .. })
        ));
        assert!(matches!(
            build_laguerre_extension(LaguerreCase::I, &int(0), 1),
            Err(Error::Constraint { constraint: "l > 0", .. })
        ));
    }

    #[test]
    fn factorization_energy_matches_shifted_alpha() {
        let l = int(3);
        let a = &l + rat(1, 2);
        let m = 2;
        let mr = int(m as i64);
        let cases = [
            (LaguerreCase::I, -(&a + int(2) * &mr)),
            (LaguerreCase::II, -(&a - int(2) * &mr)),
            (LaguerreCase::III, &a - int(2) * &mr),
        ];
        for (case, e) in cases {
            let s = build_laguerre_extension(case, &l, m).unwrap();
            assert_eq!(s.factorization_energies, vec![e], "{case:?}");
        }
    }

    #[test]
    fn laguerre2_examples() {
        let s = build_laguerre2_extension(&int(2), 0, 0).unwrap();
        assert_eq!(s.denominator, Poly::new(vec![rat(-5, 2), int(-1)]));
        let s = build_laguerre2_extension(&int(2), 1, 1).unwrap();
        assert_eq!(s.factorization_energies, vec![rat(-11, 2), rat(1, 2)]);
        assert_eq!(s.denominator.degree(), Some(3));
        assert!(matches!(
            build_laguerre2_extension(&int(1), 0, 2),
            Err(Error::Constraint { .. })
        ));
    }

    #[test]
    fn physical_spectrum_examples() {
        let s = build_hermite_extension(2).unwrap();
        let levels = physical_spectrum(&s.spectrum, &AxisSpectrum::oscillator(), &int(4));
        assert_eq!(levels[0].energy, int(-4));
        assert_eq!(levels[0].states, vec![(-3, 0)]);
        let e4 = levels.iter().find(|l| l.energy == int(4)).unwrap();
        assert_eq!(e4.states, vec![(-3, 4), (0, 1), (1, 0)]);

        let s = build_laguerre_extension(LaguerreCase::I, &int(2), 1).unwrap();
        let levels = physical_spectrum(&s.spectrum, &AxisSpectrum::oscillator(), &int(10));
        assert_eq!(levels[0].energy, rat(7, 2));
        assert_eq!(levels[0].degeneracy(), 1);
    }
}
