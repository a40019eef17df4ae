//! Classical polynomial families and the nodeless seed solutions used to
//! build rational extensions of the oscillator and the radial oscillator.
//!
//! Hermite-side objects live in `x`; Laguerre-side polynomials live in
//! `z = x^2 / 2` and are carried to `x` only when an operator needs them.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratpoly::{int, rat, sturm_count, Interval, Poly, RatFunc, Rational};

/// Physicists' Hermite polynomial `H_n`.
pub fn hermite(n: usize) -> Poly {
    let two_x = Poly::from_ints(&[0, 2]);
    let (mut prev, mut cur) = (Poly::zero(), Poly::one());
    for k in 0..n {
        // H_{k+1} = 2x H_k - 2k H_{k-1}
        let next = &(&two_x * &cur) - &prev.scale(&int(2 * k as i64));
        prev = cur;
        cur = next;
    }
    cur
}

/// Pseudo-Hermite polynomial `(-i)^m H_m(i x)`; every coefficient is
/// nonnegative and the polynomial is nodeless on the real line for even `m`.
pub fn pseudo_hermite(m: usize) -> Poly {
    let h = hermite(m);
    Poly::new(
        h.coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if c.is_zero() {
                    return c.clone();
                }
                // i^k (-i)^m = (-1)^((m-k)/2) for k ≡ m (mod 2)
                if ((m - k) / 2) % 2 == 0 {
                    c.clone()
                } else {
                    -c
                }
            })
            .collect(),
    )
}

/// Generalized Laguerre polynomial `L_m^(alpha)(z)`, or `L_m^(alpha)(-z)` when
/// `negate_arg` is set. `alpha` may be any rational.
pub fn laguerre(m: usize, alpha: &Rational, negate_arg: bool) -> Poly {
    let (mut prev, mut cur) = (Poly::zero(), Poly::one());
    for k in 0..m {
        // (k+1) L_{k+1} = (2k + 1 + alpha - z) L_k - (k + alpha) L_{k-1}
        let k_r = int(k as i64);
        let lin = Poly::new(vec![int(2 * k as i64 + 1) + alpha, -Rational::one()]);
        let next = (&(&lin * &cur) - &prev.scale(&(&k_r + alpha))).scale(&rat(1, k as i64 + 1));
        prev = cur;
        cur = next;
    }
    if negate_arg {
        cur.negate_arg()
    } else {
        cur
    }
}

/// `x^2`.
pub fn oscillator_potential() -> RatFunc {
    RatFunc::from_poly(Poly::from_ints(&[0, 0, 1]))
}

/// `x^2/4 + l(l+1)/x^2` on the half-line.
pub fn radial_potential(l: &Rational) -> RatFunc {
    let c = l * (l + Rational::one());
    let num = Poly::new(vec![c, int(0), int(0), int(0), rat(1, 4)]);
    RatFunc::normalize(num, Poly::monomial(int(1), 2)).expect("x^2 is nonzero")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SeedFamily {
    HermitePseudo,
    LaguerreI,
    LaguerreII,
    LaguerreIII,
}

/// Non-polynomial factor of a seed, kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Prefactor {
    /// `exp(sign * x^2 / 2)`.
    Gaussian { sign: i8 },
    /// `z^power * exp(exp_sign * z / 2)` with `z = x^2/2`.
    Radial { z_power: Rational, exp_sign: i8 },
}

impl Prefactor {
    /// Logarithmic derivative with respect to `x`.
    pub fn log_derivative(&self) -> RatFunc {
        match self {
            Prefactor::Gaussian { sign } => {
                RatFunc::from_poly(Poly::new(vec![int(0), int(*sign as i64)]))
            }
            Prefactor::Radial { z_power, exp_sign } => {
                // d/dx log(z^a e^{s z/2}) = 2a/x + s x / 2
                let inv_x = RatFunc::recip_poly(&Poly::x()).unwrap();
                let lin = RatFunc::from_poly(Poly::new(vec![int(0), rat(*exp_sign as i64, 2)]));
                &inv_x.scale(&(z_power * int(2))) + &lin
            }
        }
    }
}

/// A nodeless, generally non-normalizable solution of the starting
/// Schrödinger equation.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedSolution {
    pub family: SeedFamily,
    pub m: usize,
    /// `l` of the radial potential the seed solves (Laguerre families only).
    pub l: Option<Rational>,
    pub alpha: Option<Rational>,
    /// In `x` for Hermite, in `z` for Laguerre.
    pub polynomial_part: Poly,
    pub prefactor: Prefactor,
    pub energy: Rational,
}

impl SeedSolution {
    /// `phi'/phi` in the variable `x`.
    pub fn log_derivative(&self) -> RatFunc {
        let poly_part = match self.family {
            SeedFamily::HermitePseudo => {
                let p = &self.polynomial_part;
                RatFunc::normalize(p.derivative(), p.clone()).expect("seed polynomial is nonzero")
            }
            _ => {
                // d/dx P(z) = x * P'(z)
                let p = &self.polynomial_part;
                let num = &Poly::x() * &p.derivative().at_half_square();
                RatFunc::normalize(num, p.at_half_square()).expect("seed polynomial is nonzero")
            }
        };
        &self.prefactor.log_derivative() + &poly_part
    }

    /// Potential of the Hamiltonian the seed solves.
    pub fn potential(&self) -> RatFunc {
        match &self.l {
            None => oscillator_potential(),
            Some(l) => radial_potential(l),
        }
    }

    /// `(w' + w^2) - (V - E)`, identically zero for a genuine seed.
    pub fn schrodinger_residual(&self) -> RatFunc {
        let w = self.log_derivative();
        let lhs = &w.derivative() + &(&w * &w);
        let rhs = &self.potential() - &RatFunc::constant(self.energy.clone());
        &lhs - &rhs
    }
}

/// Build a seed solution for `family`; `l` is the angular momentum of the
/// radial potential the seed solves and is ignored for the Hermite family.
pub fn seed_solution(family: SeedFamily, l: Option<&Rational>, m: usize) -> Result<SeedSolution> {
    let m_r = int(m as i64);
    if family == SeedFamily::HermitePseudo {
        if m % 2 == 1 {
            return Err(Error::SeedHasNodes(format!(
                "pseudo-Hermite seed requires even m, got m = {m}"
            )));
        }
        let poly = pseudo_hermite(m);
        certify_nodeless(&poly, &Interval::real_line(), "pseudo-Hermite polynomial")?;
        return Ok(SeedSolution {
            family,
            m,
            l: None,
            alpha: None,
            polynomial_part: poly,
            prefactor: Prefactor::Gaussian { sign: 1 },
            energy: -(int(2) * &m_r + int(1)),
        });
    }

    let l = l
        .ok_or_else(|| Error::InvalidArgument("Laguerre seed requires l".into()))?
        .clone();
    let alpha = &l + rat(1, 2);
    if alpha <= -Rational::one() {
        return Err(Error::constraint(
            "alpha = l + 1/2 > -1",
            format!("l = {}", crate::ratpoly::render(&l)),
        ));
    }
    let one = Rational::one();
    if matches!(family, SeedFamily::LaguerreII | SeedFamily::LaguerreIII) && alpha <= &m_r - &one {
        return Err(Error::constraint(
            "alpha > m - 1",
            format!(
                "alpha = {}, m = {m}",
                crate::ratpoly::render(&alpha)
            ),
        ));
    }
    if family == SeedFamily::LaguerreIII && m % 2 == 1 {
        return Err(Error::constraint(
            "m even for type III",
            format!("m = {m}"),
        ));
    }
    let quarter = |v: Rational| v * rat(1, 4);
    let (poly, prefactor, energy) = match family {
        SeedFamily::LaguerreI => (
            laguerre(m, &alpha, true),
            Prefactor::Radial {
                z_power: quarter(int(2) * &alpha + &one),
                exp_sign: 1,
            },
            -(&alpha + int(2) * &m_r + &one),
        ),
        SeedFamily::LaguerreII => (
            laguerre(m, &-alpha.clone(), false),
            Prefactor::Radial {
                z_power: -quarter(int(2) * &alpha - &one),
                exp_sign: -1,
            },
            -(&alpha - int(2) * &m_r - &one),
        ),
        SeedFamily::LaguerreIII => (
            laguerre(m, &-alpha.clone(), true),
            Prefactor::Radial {
                z_power: -quarter(int(2) * &alpha - &one),
                exp_sign: 1,
            },
            &alpha - int(2) * &m_r - &one,
        ),
        SeedFamily::HermitePseudo => unreachable!(),
    };
    certify_nodeless(&poly, &Interval::positive_half_line(), "Laguerre seed polynomial")?;
    Ok(SeedSolution {
        family,
        m,
        l: Some(l),
        alpha: Some(alpha),
        polynomial_part: poly,
        prefactor,
        energy,
    })
}

pub(crate) fn certify_nodeless(p: &Poly, domain: &Interval, what: &str) -> Result<()> {
    let roots = sturm_count(p, domain)?;
    if roots > 0 {
        return Err(Error::SeedHasNodes(format!(
            "{what} {p} has {roots} real root(s) on the domain"
        )));
    }
    Ok(())
}
