//! Enumeration of finite-dimensional unitary representations: for each
//! u-branch and each closing factor, `Phi(E, u, p + 1) = 0` fixes `E` as an
//! affine function of `p`; a solution must keep `Phi(E, u, n) > 0` for
//! `n = 1..p` and map every Fock state onto a physical 2D state.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{structure_function, u_roots, write_affine, StructureFunction, System2D, UBranch};
use crate::error::Result;
use crate::extensions::AxisSpectrum;
use crate::ratpoly::{int, Poly, Rational};
use crate::report::ser_rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumOptions {
    pub p_max: u64,
    /// Drop solutions whose Fock states are not physical states.
    pub require_physical: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            p_max: 50,
            require_physical: true,
        }
    }
}

/// `p P + x X + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PFactor {
    #[serde(serialize_with = "ser_rational")]
    pub p: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub x: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational,
}

impl PFactor {
    pub fn new(p: Rational, x: Rational, c: Rational) -> Self {
        PFactor { p, x, c }
    }

    pub fn eval(&self, p: &Rational, x: &Rational) -> Rational {
        &self.p * p + &self.x * x + &self.c
    }
}

impl fmt::Display for PFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        write_affine(f, &[(&self.x, "x"), (&self.p, "p")], &self.c)?;
        write!(f, ")")
    }
}

/// Structure function after fixing `u` and `E(p)`, each factor scaled to a
/// unit `x` coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedPhi {
    #[serde(serialize_with = "ser_rational")]
    pub constant: Rational,
    pub factors: Vec<PFactor>,
}

impl ReducedPhi {
    fn normalized(mut constant: Rational, raw: Vec<PFactor>) -> Self {
        let mut factors = Vec::with_capacity(raw.len());
        for f in raw {
            if f.x.is_zero() {
                factors.push(f);
                continue;
            }
            let s = f.x.abs();
            constant *= &s;
            factors.push(PFactor::new(&f.p / &s, &f.x / &s, &f.c / &s));
        }
        factors.sort();
        ReducedPhi { constant, factors }
    }

    pub fn eval(&self, p: &Rational, x: &Rational) -> Rational {
        self.factors
            .iter()
            .fold(self.constant.clone(), |acc, f| acc * f.eval(p, x))
    }

    /// The structure function at fixed `p` as a polynomial in `x`.
    pub fn poly_at(&self, p: &Rational) -> Poly {
        self.factors.iter().fold(Poly::constant(self.constant.clone()), |acc, f| {
            &acc * &Poly::new(vec![&f.p * p + &f.c, f.x.clone()])
        })
    }
}

impl fmt::Display for ReducedPhi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::ratpoly::render(&self.constant))?;
        for fac in &self.factors {
            write!(f, "{fac}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PRange {
    /// Every `p` in `{0, 1, 2, ...}`.
    All,
    Value(u64),
}

impl Serialize for PRange {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            PRange::All => s.serialize_str("N"),
            PRange::Value(p) => s.serialize_u64(*p),
        }
    }
}

/// `E = slope p + intercept`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EnergyForm {
    #[serde(serialize_with = "ser_rational")]
    pub slope: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub intercept: Rational,
}

impl fmt::Display for EnergyForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_affine(f, &[(&self.slope, "p")], &self.intercept)
    }
}

impl EnergyForm {
    pub fn eval(&self, p: &Rational) -> Rational {
        &self.slope * p + &self.intercept
    }
}

/// `p P + n N + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Affine2 {
    #[serde(serialize_with = "ser_rational")]
    pub p: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub n: Rational,
    #[serde(serialize_with = "ser_rational")]
    pub c: Rational,
}

impl Affine2 {
    fn eval(&self, p: &Rational, n: &Rational) -> Rational {
        &self.p * p + &self.n * n + &self.c
    }

    fn is_integral(&self) -> bool {
        self.p.is_integer() && self.n.is_integer() && self.c.is_integer()
    }
}

/// `(nu_x, nu_y)` of Fock state `n` as affine functions of `(p, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StateForm {
    pub nu_x: Affine2,
    pub nu_y: Affine2,
}

impl StateForm {
    pub fn state(&self, p: u64, n: u64) -> Option<(i64, i64)> {
        let (p, n) = (int(p as i64), int(n as i64));
        let x = self.nu_x.eval(&p, &n);
        let y = self.nu_y.eval(&p, &n);
        if !x.is_integer() || !y.is_integer() {
            return None;
        }
        Some((x.to_integer().to_i64()?, y.to_integer().to_i64()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepSolution {
    pub branch: UBranch,
    pub closing_factor: usize,
    pub p: PRange,
    pub energy: EnergyForm,
    #[serde(serialize_with = "crate::report::ser_opt_rational")]
    pub energy_value: Option<Rational>,
    pub phi: ReducedPhi,
    pub state_form: StateForm,
    /// Explicit states for a fixed `p`.
    pub states: Vec<(i64, i64)>,
    /// Other solutions (by position) with the same `E`, `p` and structure
    /// function.
    pub duplicate_phi_with: Vec<usize>,
}

impl RepSolution {
    /// `E` at a given `p`.
    pub fn energy_at(&self, p: u64) -> Rational {
        self.energy.eval(&int(p as i64))
    }

    pub fn states_at(&self, p: u64) -> Vec<(i64, i64)> {
        (0..=p).filter_map(|n| self.state_form.state(p, n)).collect()
    }
}

/// A closing factor that does not involve `E` after fixing `u`: it vanishes
/// at `x = p + 1` for one `p` regardless of the energy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnconstrainedBranch {
    pub branch: usize,
    pub factor: usize,
    pub p: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    pub branch: UBranch,
    pub solutions: usize,
    /// `(closing factor, p)` pairs examined with an `E`-dependent closing factor.
    pub candidates: usize,
    pub rejected_positivity: usize,
    pub rejected_spectrum: usize,
    pub unconstrained: Vec<UnconstrainedBranch>,
}

impl BranchReport {
    pub fn verdict(&self) -> &'static str {
        if self.solutions > 0 {
            "solutions"
        } else if self.rejected_positivity > 0 && self.rejected_spectrum > 0 {
            "fails positivity and spectrum membership"
        } else if self.rejected_positivity > 0 {
            "fails positivity"
        } else if self.rejected_spectrum > 0 {
            "fails spectrum membership"
        } else {
            "no energy-dependent closing factor"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub phi: StructureFunction,
    pub branches: Vec<UBranch>,
    pub solutions: Vec<RepSolution>,
    pub diagnostics: Vec<BranchReport>,
}

struct Context<'a> {
    phi: &'a StructureFunction,
    lambda: Rational,
    x_spec: AxisSpectrum,
    y_spec: AxisSpectrum,
    opts: &'a EnumOptions,
}

#[derive(Default)]
struct CandidateResult {
    solutions: Vec<RepSolution>,
    candidates: usize,
    positivity: usize,
    spectrum: usize,
    unconstrained: Option<UnconstrainedBranch>,
}

fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// `Phi(p, n) > 0` for every `p >= 1` and `1 <= n <= p`: each factor is
/// affine, so it keeps a strict sign on that cone iff its value at the apex
/// `(1, 1)` is nonzero and it does not change sign along the edge
/// directions `(1, 0)` and `(1, 1)`.
fn positive_for_all_p(phi: &ReducedPhi) -> bool {
    let mut total = sign(&phi.constant);
    for f in &phi.factors {
        let apex = sign(&(&f.p + &f.x + &f.c));
        if apex == 0 {
            return false;
        }
        for dir in [f.p.clone(), &f.p + &f.x] {
            let s = sign(&dir);
            if s != 0 && s != apex {
                return false;
            }
        }
        total *= apex;
    }
    total > 0
}

fn positive_at(phi: &ReducedPhi, p: u64) -> bool {
    let pr = int(p as i64);
    (1..=p).all(|n| phi.eval(&pr, &int(n as i64)).is_positive())
}

/// Allowed `nu` on `0 <= n <= p` for every `p >= 0`.
fn allowed_for_all_p(f: &Affine2, spec: &AxisSpectrum) -> bool {
    if !f.is_integral() {
        return false;
    }
    if f.p.is_zero() && f.n.is_zero() {
        return f
            .c
            .to_integer()
            .to_i64()
            .is_some_and(|c| spec.is_allowed(c));
    }
    !f.c.is_negative() && !f.p.is_negative() && !(&f.p + &f.n).is_negative()
}

fn physical_at(form: &StateForm, x: &AxisSpectrum, y: &AxisSpectrum, p: u64) -> bool {
    (0..=p).all(|n| {
        form.state(p, n)
            .is_some_and(|(nx, ny)| x.is_allowed(nx) && y.is_allowed(ny))
    })
}

impl Context<'_> {
    fn candidate(&self, ub: &UBranch, k: usize) -> CandidateResult {
        let mut out = CandidateResult::default();
        // factors in (E, x) after u = ub.e E + ub.c
        let ex: Vec<(Rational, Rational, Rational)> = self
            .phi
            .factors
            .iter()
            .map(|f| (&f.e + &f.u * &ub.e, f.x.clone(), &f.c + &f.u * &ub.c))
            .collect();
        let (ke, kx, kc) = &ex[k];
        if ke.is_zero() {
            if kx.is_zero() {
                return out;
            }
            let p_star = -(kc / kx) - Rational::one();
            let p = (p_star.is_integer() && !p_star.is_negative())
                .then(|| p_star.to_integer().to_u64())
                .flatten();
            if p.is_some() {
                out.unconstrained = Some(UnconstrainedBranch {
                    branch: ub.index,
                    factor: k,
                    p,
                });
            }
            return out;
        }
        // ke E + kx (p + 1) + kc = 0
        let energy = EnergyForm {
            slope: -(kx / ke),
            intercept: -((kx + kc) / ke),
        };
        let raw: Vec<PFactor> = ex
            .iter()
            .map(|(e, x, c)| PFactor::new(e * &energy.slope, x.clone(), c + e * &energy.intercept))
            .collect();
        let phi = ReducedPhi::normalized(self.phi.constant.clone(), raw);

        // E_x = E/2 + lambda (n + u(E)), E_y = E - E_x
        let lam = &self.lambda;
        let ex_e = Rational::new(1.into(), 2.into()) + lam * &ub.e;
        let ex_p = &ex_e * &energy.slope;
        let ex_c = &ex_e * &energy.intercept + lam * &ub.c;
        let half = Rational::new(1.into(), 2.into());
        let nu_x = Affine2 {
            p: &ex_p * &half,
            n: lam * &half,
            c: (&ex_c - &self.x_spec.base) * &half,
        };
        let nu_y = Affine2 {
            p: (&energy.slope - &ex_p) * &half,
            n: -(lam * &half),
            c: (&energy.intercept - &ex_c - &self.y_spec.base) * &half,
        };
        let form = StateForm { nu_x, nu_y };

        let symbolic_physical = !self.opts.require_physical
            || (allowed_for_all_p(&form.nu_x, &self.x_spec)
                && allowed_for_all_p(&form.nu_y, &self.y_spec));
        if positive_for_all_p(&phi) && symbolic_physical {
            out.candidates = 1;
            out.solutions.push(RepSolution {
                branch: ub.clone(),
                closing_factor: k,
                p: PRange::All,
                energy,
                energy_value: None,
                phi,
                state_form: form,
                states: Vec::new(),
                duplicate_phi_with: Vec::new(),
            });
            return out;
        }
        for p in 0..=self.opts.p_max {
            out.candidates += 1;
            if !positive_at(&phi, p) {
                out.positivity += 1;
                continue;
            }
            if self.opts.require_physical && !physical_at(&form, &self.x_spec, &self.y_spec, p) {
                out.spectrum += 1;
                continue;
            }
            let states = (0..=p).filter_map(|n| form.state(p, n)).collect();
            out.solutions.push(RepSolution {
                branch: ub.clone(),
                closing_factor: k,
                p: PRange::Value(p),
                energy: energy.clone(),
                energy_value: Some(energy.eval(&int(p as i64))),
                phi: phi.clone(),
                state_form: form.clone(),
                states,
                duplicate_phi_with: Vec::new(),
            });
        }
        out
    }
}

fn same_solution(a: &RepSolution, b: &RepSolution) -> bool {
    // coinciding branches (same u(E)) give the same representation
    if (&a.branch.e, &a.branch.c) != (&b.branch.e, &b.branch.c) {
        return false;
    }
    match (a.p, b.p) {
        (PRange::All, PRange::All) => a.energy == b.energy,
        (PRange::Value(p), PRange::Value(q)) => p == q && a.energy_value == b.energy_value,
        (PRange::All, PRange::Value(p)) | (PRange::Value(p), PRange::All) => {
            let (fam, single) = if a.p == PRange::All { (a, b) } else { (b, a) };
            Some(fam.energy_at(p)) == single.energy_value
        }
    }
}

/// Every finite-dimensional unitary representation of the system's
/// deformed-oscillator realization with `p <= p_max` or `p` in all of `N`.
pub fn enumerate_reps(sys: &System2D, opts: &EnumOptions) -> Result<Enumeration> {
    let phi = structure_function(sys);
    let branches = u_roots(&phi)?;
    let ctx = Context {
        phi: &phi,
        lambda: sys.lambda(),
        x_spec: sys.x_spectrum(),
        y_spec: sys.y_spectrum(),
        opts,
    };
    let jobs: Vec<(usize, usize)> = (0..branches.len())
        .flat_map(|b| (0..phi.factors.len()).map(move |k| (b, k)))
        .collect();
    let results: Vec<CandidateResult> = jobs
        .par_iter()
        .map(|&(b, k)| ctx.candidate(&branches[b], k))
        .collect();

    let mut per_branch: BTreeMap<usize, BranchReport> = branches
        .iter()
        .map(|b| {
            let report = BranchReport {
                branch: b.clone(),
                solutions: 0,
                candidates: 0,
                rejected_positivity: 0,
                rejected_spectrum: 0,
                unconstrained: Vec::new(),
            };
            (b.index, report)
        })
        .collect();
    let mut raw = Vec::new();
    for (&(b, _), r) in jobs.iter().zip(results) {
        let report = per_branch.get_mut(&branches[b].index).expect("known branch");
        report.candidates += r.candidates;
        report.rejected_positivity += r.positivity;
        report.rejected_spectrum += r.spectrum;
        report.unconstrained.extend(r.unconstrained);
        raw.extend(r.solutions);
    }
    // families first, so fixed-p solutions they already contain are dropped
    raw.sort_by_key(|s| s.p != PRange::All);
    let mut solutions: Vec<RepSolution> = Vec::new();
    for s in raw {
        if !solutions.iter().any(|t| same_solution(t, &s)) {
            solutions.push(s);
        }
    }
    solutions.sort_by(|a, b| {
        let key = |s: &RepSolution| {
            let p = match s.p {
                PRange::All => None,
                PRange::Value(p) => Some(p),
            };
            (s.branch.index, p, s.energy_value.clone(), s.closing_factor)
        };
        key(a).cmp(&key(b))
    });
    annotate_duplicates(&mut solutions);
    for s in &solutions {
        per_branch.get_mut(&s.branch.index).expect("known branch").solutions += 1;
    }
    Ok(Enumeration {
        phi: phi.clone(),
        branches,
        solutions,
        diagnostics: per_branch.into_values().collect(),
    })
}

fn annotate_duplicates(solutions: &mut [RepSolution]) {
    let n = solutions.len();
    for i in 0..n {
        for j in 0..n {
            if i == j || solutions[i].branch == solutions[j].branch {
                continue;
            }
            let (PRange::Value(p), PRange::Value(q)) = (solutions[i].p, solutions[j].p) else {
                continue;
            };
            if p != q || solutions[i].energy_value != solutions[j].energy_value {
                continue;
            }
            let pr = int(p as i64);
            if solutions[i].phi.poly_at(&pr) == solutions[j].phi.poly_at(&pr) {
                solutions[i].duplicate_phi_with.push(j);
            }
        }
    }
}
