use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// Reduced rational function `num / den` with a monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// Reduce `num / den` to lowest terms with a monic denominator.
    pub fn normalize(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_constant() {
            let inv = den.leading().recip();
            return RatFunc {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let inv = den.leading().recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RatFunc {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_poly(Poly::constant(c))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    /// `x`.
    pub fn x() -> Self {
        RatFunc::from_poly(Poly::x())
    }

    /// `1 / p`; errors on the zero polynomial.
    pub fn recip_poly(p: &Poly) -> Result<Self> {
        RatFunc::normalize(Poly::one(), p.clone())
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        RatFunc::normalize(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.recip()?)
    }

    pub fn derivative(&self) -> RatFunc {
        if self.den.is_constant() {
            return RatFunc::from_poly(self.num.derivative());
        }
        // (n/d)' = (n' d - n d') / d^2; only gcd(d, d') can cancel against d^2.
        let d1 = self.den.derivative();
        let g = self.den.gcd(&d1);
        let d_red = self.den.exact_div(&g).unwrap();
        let d1_red = d1.exact_div(&g).unwrap();
        let num = &(&self.num.derivative() * &d_red) - &(&self.num * &d1_red);
        RatFunc::reduce(num, &self.den * &d_red)
    }

    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        (!d.is_zero()).then(|| self.num.eval(x) / d)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.num.eval_f64(x) / self.den.eval_f64(x)
    }

    /// Substitute a polynomial for the variable.
    pub fn compose_poly(&self, inner: &Poly) -> RatFunc {
        RatFunc::reduce(self.num.compose(inner), self.den.compose(inner))
    }

    pub fn pow(&self, n: u32) -> RatFunc {
        RatFunc {
            num: self.num.pow(n),
            den: self.den.pow(n),
        }
    }
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        if self.den.is_one_poly() {
            return RatFunc::reduce(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one_poly() {
            return RatFunc::reduce(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a = self.den.exact_div(&g).unwrap();
        let b = rhs.den.exact_div(&g).unwrap();
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFunc::reduce(num, &(&a * &b) * &g)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // Cross-cancel so the product is already reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let inv = den.leading().recip();
        RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Poly {
    fn is_one_poly(&self) -> bool {
        self.coeffs().len() == 1 && self.coeffs()[0].is_one()
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    #[test]
    fn normalize_examples() {
        let r = RatFunc::normalize(p(&[0, 2]), p(&[2])).unwrap();
        assert_eq!(r.num(), &p(&[0, 1]));
        assert_eq!(r.den(), &Poly::one());

        let r = RatFunc::normalize(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(r.num(), &p(&[1, 1]));
        assert!(r.is_polynomial());

        // 8x / (4x^2 + 2) = 2x / (x^2 + 1/2)
        let r = RatFunc::normalize(p(&[0, 8]), p(&[2, 0, 4])).unwrap();
        assert_eq!(r.num(), &p(&[0, 2]));
        assert_eq!(r.den(), &Poly::new(vec![rat(1, 2), rat(0, 1), rat(1, 1)]));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RatFunc::normalize(p(&[1]), Poly::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/dx 1/(x^2+1) = -2x/(x^2+1)^2
        let r = RatFunc::recip_poly(&p(&[1, 0, 1])).unwrap();
        let d = r.derivative();
        let expect = RatFunc::normalize(p(&[0, -2]), p(&[1, 0, 1]).pow(2)).unwrap();
        assert_eq!(d, expect);
    }

    #[test]
    fn field_ops() {
        let a = RatFunc::normalize(p(&[1]), p(&[-1, 1])).unwrap();
        let b = RatFunc::normalize(p(&[1]), p(&[1, 1])).unwrap();
        // 1/(x-1) - 1/(x+1) = 2/(x^2-1)
        let d = &a - &b;
        assert_eq!(d, RatFunc::normalize(p(&[2]), p(&[-1, 0, 1])).unwrap());
        let q = d.div(&a).unwrap();
        assert_eq!(q, RatFunc::normalize(p(&[2]), p(&[1, 1])).unwrap());
        assert!((&a - &a).is_zero());
    }
}
