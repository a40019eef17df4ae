//! Linear differential operators with rational-function coefficients.
//!
//! Hamiltonians are `-d^2/dx^2 + V(x)`. Supercharges satisfy
//! `A H+ = H- A`, `A† H- = H+ A†`, `A†A = f(H+)`, `AA† = f(H-)`, and
//! ladder operators of the partner are `b = A a A†`, `b† = A a† A†`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::{certify_nodeless, laguerre, radial_potential, oscillator_potential, SeedFamily, SeedSolution};
use crate::ratpoly::{int, rat, render, Interval, Poly, RatFunc, Rational};

/// `sum_k c_k(x) d^k/dx^k`, stored densely by order with no trailing zero.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct DiffOp {
    coeffs: Vec<RatFunc>,
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * int((n - i) as i64) / int((i + 1) as i64);
    }
    acc
}

impl DiffOp {
    pub fn new(mut coeffs: Vec<RatFunc>) -> Self {
        while coeffs.last().is_some_and(RatFunc::is_zero) {
            coeffs.pop();
        }
        DiffOp { coeffs }
    }

    pub fn zero() -> Self {
        DiffOp { coeffs: Vec::new() }
    }

    pub fn identity() -> Self {
        DiffOp::multiplication(RatFunc::one())
    }

    /// `d/dx`.
    pub fn d() -> Self {
        DiffOp::new(vec![RatFunc::zero(), RatFunc::one()])
    }

    pub fn multiplication(f: RatFunc) -> Self {
        DiffOp::new(vec![f])
    }

    pub fn constant(c: Rational) -> Self {
        DiffOp::multiplication(RatFunc::constant(c))
    }

    /// `-d^2/dx^2 + V`.
    pub fn hamiltonian(v: RatFunc) -> Self {
        DiffOp::new(vec![v, RatFunc::zero(), RatFunc::constant(int(-1))])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> RatFunc {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    /// Nonzero `(order, coefficient)` pairs, lowest order first.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &RatFunc)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|r| r.scale(c)).collect())
    }

    /// Left multiplication by a function.
    pub fn left_mul(&self, f: &RatFunc) -> DiffOp {
        DiffOp::new(self.coeffs.iter().map(|r| r * f).collect())
    }

    /// Operator product `self ∘ rhs` via the Leibniz rule.
    pub fn compose(&self, rhs: &DiffOp) -> DiffOp {
        if self.is_zero() || rhs.is_zero() {
            return DiffOp::zero();
        }
        let n = self.coeffs.len() - 1;
        // derivs[j][k] = k-th derivative of rhs coefficient j
        let derivs: Vec<Vec<RatFunc>> = rhs
            .coeffs
            .iter()
            .map(|b| {
                let mut v = Vec::with_capacity(n + 1);
                let mut cur = b.clone();
                for k in 0..=n {
                    if k > 0 {
                        cur = cur.derivative();
                    }
                    v.push(cur.clone());
                    if cur.is_zero() {
                        break;
                    }
                }
                v
            })
            .collect();
        let mut out = vec![RatFunc::zero(); n + rhs.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, bd) in derivs.iter().enumerate() {
                for k in 0..=i {
                    let Some(b_k) = bd.get(k) else { break };
                    if b_k.is_zero() {
                        continue;
                    }
                    let term = (a * b_k).scale(&binomial(i, k));
                    let slot = &mut out[i - k + j];
                    *slot = &*slot + &term;
                }
            }
        }
        DiffOp::new(out)
    }

    /// `f(self)` for a polynomial `f`, by Horner's rule.
    pub fn poly_in(&self, f: &Poly) -> DiffOp {
        f.coeffs()
            .iter()
            .rev()
            .fold(DiffOp::zero(), |acc, c| &acc.compose(self) + &DiffOp::constant(c.clone()))
    }

    /// Formal adjoint: `d/dx -> -d/dx`, real coefficients unchanged.
    pub fn adjoint(&self) -> DiffOp {
        // (c_k d^k)† = (-1)^k sum_j C(k,j) c_k^{(k-j)} d^j
        let mut out = vec![RatFunc::zero(); self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let mut deriv = c.clone();
            for j in (0..=k).rev() {
                // derivative order k - j
                let term = deriv.scale(&(&sign * binomial(k, j)));
                out[j] = &out[j] + &term;
                deriv = deriv.derivative();
            }
        }
        DiffOp::new(out)
    }

    /// Apply to a rational function.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let mut acc = RatFunc::zero();
        let mut deriv = f.clone();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                deriv = deriv.derivative();
            }
            if !c.is_zero() {
                acc = &acc + &(c * &deriv);
            }
        }
        acc
    }

    /// `G^{-1} ∘ self ∘ G` for a gauge factor `G` with `G'/G = w`, i.e. the
    /// substitution `d/dx -> d/dx + w`.
    pub fn conjugate(&self, w: &RatFunc) -> DiffOp {
        let shifted = &DiffOp::d() + &DiffOp::multiplication(w.clone());
        let mut power = DiffOp::identity();
        let mut acc = DiffOp::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = shifted.compose(&power);
            }
            if !c.is_zero() {
                acc = &acc + &power.left_mul(c);
            }
        }
        acc
    }
}

pub fn compose(a: &DiffOp, b: &DiffOp) -> DiffOp {
    a.compose(b)
}

/// `AB - BA`.
pub fn commutator(a: &DiffOp, b: &DiffOp) -> DiffOp {
    &a.compose(b) - &b.compose(a)
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOp::new((0..n).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DiffOp::new((0..n).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.compose(rhs)
    }
}

impl Neg for &DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale(&int(-1))
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "[{c}]")?,
                1 => write!(f, "[{c}] D")?,
                _ => write!(f, "[{c}] D^{k}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial kept as `constant * prod (H - root)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactoredPoly {
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub constant: Rational,
    #[serde(serialize_with = "crate::report::ser_rationals")]
    pub roots: Vec<Rational>,
}

impl FactoredPoly {
    pub fn new(constant: Rational, roots: Vec<Rational>) -> Self {
        FactoredPoly { constant, roots }
    }

    pub fn monic(roots: Vec<Rational>) -> Self {
        FactoredPoly::new(Rational::one(), roots)
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_roots(&self.constant, &self.roots)
    }

    pub fn eval(&self, h: &Rational) -> Rational {
        self.roots
            .iter()
            .fold(self.constant.clone(), |acc, r| acc * (h - r))
    }

    /// `f(H - shift)`.
    pub fn shifted(&self, shift: &Rational) -> FactoredPoly {
        FactoredPoly::new(
            self.constant.clone(),
            self.roots.iter().map(|r| r + shift).collect(),
        )
    }

    pub fn product(&self, other: &FactoredPoly) -> FactoredPoly {
        let mut roots = self.roots.clone();
        roots.extend(other.roots.iter().cloned());
        FactoredPoly::new(&self.constant * &other.constant, roots)
    }

    pub fn root_strings(&self) -> Vec<String> {
        self.roots.iter().map(render).collect()
    }
}

/// Ladder operators of a Hamiltonian: `[H, op] = -lambda op`,
/// `op_dagger op = p(H)`.
#[derive(Clone, Debug)]
pub struct LadderSpec {
    pub op: DiffOp,
    pub op_dagger: DiffOp,
    pub lambda: Rational,
    pub p: FactoredPoly,
}

impl LadderSpec {
    pub fn order(&self) -> usize {
        self.op.order().unwrap_or(0)
    }
}

/// First-order ladder of `-d^2 + x^2`: `a = d + x`, `P(H) = H - 1`.
pub fn oscillator_ladder() -> LadderSpec {
    let x = DiffOp::multiplication(RatFunc::x());
    LadderSpec {
        op: &DiffOp::d() + &x,
        op_dagger: &(-&DiffOp::d()) + &x,
        lambda: int(2),
        p: FactoredPoly::monic(vec![int(1)]),
    }
}

/// Second-order ladder of `-d^2 + x^2/4 + l(l+1)/x^2`.
pub fn radial_ladder(l: &Rational) -> LadderSpec {
    let d = DiffOp::d();
    let d2 = d.compose(&d);
    let x = RatFunc::x();
    // x^2/2 - 2 l (l+1)/x^2
    let centrifugal = &RatFunc::from_poly(Poly::new(vec![int(0), int(0), rat(1, 2)]))
        - &RatFunc::normalize(
            Poly::constant(int(2) * l * (l + int(1))),
            Poly::monomial(int(1), 2),
        )
        .unwrap();
    let x_d = d.left_mul(&x.scale(&int(2)));
    let base = &d2.scale(&int(2)) + &DiffOp::multiplication(centrifugal);
    let quarter = rat(1, 4);
    let op = (&(&base + &x_d) + &DiffOp::constant(int(1))).scale(&quarter);
    let op_dagger = (&(&base - &x_d) - &DiffOp::constant(int(1))).scale(&quarter);
    // (1/16)(2H - 3 - 2l)(2H - 1 + 2l) = (1/4)(H - 3/2 - l)(H - 1/2 + l)
    let p = FactoredPoly::new(
        rat(1, 4),
        vec![rat(3, 2) + l, rat(1, 2) - l],
    );
    LadderSpec {
        op,
        op_dagger,
        lambda: int(2),
        p,
    }
}

/// First-order supercharge `A = d + q0` with `q0 = -phi'/phi`.
pub fn first_order_supercharge(seed: &SeedSolution) -> Result<(DiffOp, DiffOp)> {
    match seed.family {
        SeedFamily::HermitePseudo => {
            certify_nodeless(&seed.polynomial_part, &Interval::real_line(), "seed polynomial")?
        }
        _ => certify_nodeless(
            &seed.polynomial_part,
            &Interval::positive_half_line(),
            "seed polynomial",
        )?,
    }
    let q0 = -seed.log_derivative();
    let a = &DiffOp::d() + &DiffOp::multiplication(q0.clone());
    let a_dag = &(-&DiffOp::d()) + &DiffOp::multiplication(q0);
    Ok((a, a_dag))
}

/// Second-order supercharge built from a type I and a type II seed of the
/// same radial oscillator.
#[derive(Clone, Debug)]
pub struct SecondOrderSupercharge {
    pub a: DiffOp,
    pub a_dagger: DiffOp,
    /// Wronskian polynomial in `z`, degree `mu = m1 + m2 + 1`.
    pub g_mu: Poly,
    pub mu: usize,
    pub q1: RatFunc,
    pub q0: RatFunc,
    /// `E1 - E2`.
    pub c: Rational,
    pub e1: Rational,
    pub e2: Rational,
}

/// `g_mu(z) = z W(L_{m1}^(a)(-z), L_{m2}^(-a)(z)) - (z + a) L_{m1}^(a)(-z) L_{m2}^(-a)(z)`.
pub fn wronskian_polynomial(alpha: &Rational, m1: usize, m2: usize) -> Poly {
    let f = laguerre(m1, alpha, true);
    let g = laguerre(m2, &-alpha.clone(), false);
    let z = Poly::x();
    let z_plus_a = Poly::new(vec![alpha.clone(), int(1)]);
    &(&z * &Poly::wronskian(&f, &g)) - &(&z_plus_a * &(&f * &g))
}

pub fn second_order_supercharge(
    seed1: &SeedSolution,
    seed2: &SeedSolution,
) -> Result<SecondOrderSupercharge> {
    if seed1.family != SeedFamily::LaguerreI || seed2.family != SeedFamily::LaguerreII {
        return Err(Error::NotImplemented(format!(
            "second-order pairing {:?} + {:?}; only the (I, II) pairing is supported",
            seed1.family, seed2.family
        )));
    }
    let (Some(l1), Some(l2)) = (&seed1.l, &seed2.l) else {
        return Err(Error::InvalidArgument("Laguerre seeds need l".into()));
    };
    if l1 != l2 {
        return Err(Error::InvalidArgument("both seeds must share l".into()));
    }
    let alpha = l1 + rat(1, 2);
    let m2 = int(seed2.m as i64);
    if m2 >= alpha {
        return Err(Error::constraint(
            "m2 < l + 1/2",
            format!("m2 = {}, l = {}", seed2.m, render(l1)),
        ));
    }
    let g_mu = wronskian_polynomial(&alpha, seed1.m, seed2.m);
    let mu = seed1.m + seed2.m + 1;
    if g_mu.degree() != Some(mu) {
        return Err(Error::ConstructionInconsistency(format!(
            "g_mu has degree {:?}, expected {mu}",
            g_mu.degree()
        )));
    }
    let roots = crate::ratpoly::sturm_count(&g_mu, &Interval::positive_half_line())?;
    if roots > 0 {
        return Err(Error::SingularIntermediate(format!(
            "g_mu = {g_mu} has {roots} root(s) on (0, inf)"
        )));
    }
    // q1 = -W'/W with W ∝ g_mu(x^2/2):  q1 = -x g'(z)/g(z)
    let gx = g_mu.at_half_square();
    let q1 = -RatFunc::normalize(&Poly::x() * &g_mu.derivative().at_half_square(), gx)?;
    let c = &seed1.energy - &seed2.energy;
    let q1p = q1.derivative();
    let q1pp = q1p.derivative();
    let half = rat(1, 2);
    let ratio = q1p.div(&q1.scale(&int(2)))?;
    let q0 = &(&(&q1p.scale(&half) + &(&q1 * &q1).scale(&rat(1, 4)))
        - &q1pp.div(&q1.scale(&int(2)))?)
        + &(&(&ratio * &ratio) - &RatFunc::constant(&c * &c * rat(1, 4)).div(&(&q1 * &q1))?);
    let a = DiffOp::new(vec![q0.clone(), q1.clone(), RatFunc::one()]);
    let a_dagger = a.adjoint();
    Ok(SecondOrderSupercharge {
        a,
        a_dagger,
        g_mu,
        mu,
        q1,
        q0,
        c,
        e1: seed1.energy.clone(),
        e2: seed2.energy.clone(),
    })
}

/// `A H+ - H- A == 0`.
pub fn check_intertwining(a: &DiffOp, h_plus: &DiffOp, h_minus: &DiffOp) -> bool {
    (&a.compose(h_plus) - &h_minus.compose(a)).is_zero()
}

/// `A† A == f(H)`.
pub fn check_factorization(a: &DiffOp, a_dagger: &DiffOp, h: &DiffOp, f: &Poly) -> bool {
    (&a_dagger.compose(a) - &h.poly_in(f)).is_zero()
}

/// `phi^{-1} A phi == 0` for the seed `phi`.
pub fn annihilates(a: &DiffOp, seed: &SeedSolution) -> bool {
    a.conjugate(&seed.log_derivative()).apply(&RatFunc::one()).is_zero()
}

/// Ladder of the partner Hamiltonian, `b = A a A†`, with
/// `P-(H) = P+(H) f(H - lambda) f(H)`.
pub fn compose_ladder(
    a: &DiffOp,
    ladder: &LadderSpec,
    a_dagger: &DiffOp,
    f: &FactoredPoly,
    h_minus: &DiffOp,
) -> Result<LadderSpec> {
    let op = a.compose(&ladder.op).compose(a_dagger);
    let op_dagger = a.compose(&ladder.op_dagger).compose(a_dagger);
    let p = partner_ladder_polynomial(&ladder.p, f, &ladder.lambda);
    let check = &commutator(h_minus, &op) + &op.scale(&ladder.lambda);
    if !check.is_zero() {
        return Err(Error::PhaViolation(format!(
            "[H-, b] + {} b != 0",
            render(&ladder.lambda)
        )));
    }
    Ok(LadderSpec {
        op,
        op_dagger,
        lambda: ladder.lambda.clone(),
        p,
    })
}

/// `P+(H) f(H - lambda) f(H)`, roots grouped as `(e + lambda, e)` per root `e` of `f`.
pub fn partner_ladder_polynomial(p_plus: &FactoredPoly, f: &FactoredPoly, lambda: &Rational) -> FactoredPoly {
    let mut roots = p_plus.roots.clone();
    for e in &f.roots {
        roots.push(e + lambda);
        roots.push(e.clone());
    }
    FactoredPoly::new(&p_plus.constant * &f.constant * &f.constant, roots)
}

/// `[H, op] + lambda op == 0`.
pub fn check_lowering(h: &DiffOp, ladder: &LadderSpec) -> bool {
    (&commutator(h, &ladder.op) + &ladder.op.scale(&ladder.lambda)).is_zero()
}

/// `op† op == P(H)`.
pub fn check_ladder_factorization(h: &DiffOp, ladder: &LadderSpec) -> bool {
    (&ladder.op_dagger.compose(&ladder.op) - &h.poly_in(&ladder.p.to_poly())).is_zero()
}

pub fn oscillator_hamiltonian() -> DiffOp {
    DiffOp::hamiltonian(oscillator_potential())
}

pub fn radial_hamiltonian(l: &Rational) -> DiffOp {
    DiffOp::hamiltonian(radial_potential(l))
}
