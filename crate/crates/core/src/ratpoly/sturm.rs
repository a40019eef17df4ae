use num_traits::{Signed, Zero};

use super::{Poly, Rational};
use crate::error::{Error, Result};

/// One end of a real interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    NegInfinity,
    At(Rational),
    PosInfinity,
}

/// Open interval `(lo, hi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Bound,
    pub hi: Bound,
}

impl Interval {
    pub fn real_line() -> Self {
        Interval {
            lo: Bound::NegInfinity,
            hi: Bound::PosInfinity,
        }
    }

    pub fn positive_half_line() -> Self {
        Interval {
            lo: Bound::At(Rational::zero()),
            hi: Bound::PosInfinity,
        }
    }

    pub fn open(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo: Bound::At(lo),
            hi: Bound::At(hi),
        }
    }
}

/// Signed remainder sequence `p, p', -rem(p, p'), ...`, each term scaled to
/// a primitive integer polynomial by a positive factor.
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.primitive(), p.derivative().primitive()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push((-r).primitive());
    }
    seq
}

fn sign_at(p: &Poly, b: &Bound) -> i8 {
    let s = match b {
        Bound::At(x) => p.eval(x),
        Bound::PosInfinity => p.leading(),
        Bound::NegInfinity => {
            let deg = p.degree().unwrap_or(0);
            if deg % 2 == 0 {
                p.leading()
            } else {
                -p.leading()
            }
        }
    };
    if s.is_zero() {
        0
    } else if s.is_positive() {
        1
    } else {
        -1
    }
}

fn sign_changes(seq: &[Poly], b: &Bound) -> usize {
    let signs: Vec<i8> = seq.iter().map(|q| sign_at(q, b)).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Remove every factor `(x - r)` from `p`.
fn strip_root(mut p: Poly, r: &Rational) -> Poly {
    let lin = Poly::linear_root(r);
    while !p.is_constant() && p.eval(r).is_zero() {
        p = p.exact_div(&lin).expect("root divides");
    }
    p
}

/// Number of distinct real roots of `p` inside the open interval.
pub fn sturm_count(p: &Poly, interval: &Interval) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::IndeterminateRootCount);
    }
    let mut q = p.clone();
    // Endpoint roots are outside the open interval; removing them keeps the
    // count intact and makes both endpoints regular for Sturm's theorem.
    if let Bound::At(a) = &interval.lo {
        q = strip_root(q, a);
    }
    if let Bound::At(b) = &interval.hi {
        q = strip_root(q, b);
    }
    if let (Bound::At(a), Bound::At(b)) = (&interval.lo, &interval.hi) {
        if a >= b {
            return Ok(0);
        }
    }
    if q.is_constant() {
        return Ok(0);
    }
    let seq = sturm_sequence(&q);
    let lo = sign_changes(&seq, &interval.lo);
    let hi = sign_changes(&seq, &interval.hi);
    Ok(lo.saturating_sub(hi))
}

/// Cauchy bound: every real root lies in `[-B, B]`.
pub fn cauchy_bound(p: &Poly) -> Rational {
    let lead = p.leading().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::from_integer(1.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratpoly::rat;

    #[test]
    fn examples() {
        let p = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(sturm_count(&p, &Interval::real_line()).unwrap(), 2);
        let h2 = Poly::from_ints(&[2, 0, 4]);
        assert_eq!(sturm_count(&h2, &Interval::real_line()).unwrap(), 0);
        let g = Poly::new(vec![rat(5, 2), rat(1, 1)]);
        assert_eq!(sturm_count(&g, &Interval::positive_half_line()).unwrap(), 0);
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        assert!(matches!(
            sturm_count(&Poly::zero(), &Interval::real_line()),
            Err(Error::IndeterminateRootCount)
        ));
    }

    #[test]
    fn endpoints_are_excluded() {
        // roots 0, 1, 2
        let p = Poly::from_roots(&rat(1, 1), &[rat(0, 1), rat(1, 1), rat(2, 1)]);
        assert_eq!(sturm_count(&p, &Interval::open(rat(0, 1), rat(2, 1))).unwrap(), 1);
        assert_eq!(sturm_count(&p, &Interval::positive_half_line()).unwrap(), 2);
        assert_eq!(sturm_count(&p, &Interval::open(rat(-1, 1), rat(3, 1))).unwrap(), 3);
    }

    #[test]
    fn multiple_roots_counted_once() {
        let p = Poly::from_roots(&rat(3, 1), &[rat(1, 2), rat(1, 2), rat(-4, 1)]);
        assert_eq!(sturm_count(&p, &Interval::real_line()).unwrap(), 2);
    }
}
