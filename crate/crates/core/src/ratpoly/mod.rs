//! Exact rational arithmetic: scalars, univariate polynomials, reduced
//! rational functions and Sturm root counting.

mod poly;
mod ratfunc;
mod sturm;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

pub use poly::Poly;
pub use ratfunc::RatFunc;
pub use sturm::{cauchy_bound, sturm_count, sturm_sequence, Bound, Interval};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Shorthand constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn render(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parse `"p"`, `"p/q"` or a finite decimal such as `"2.5"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d == BigInt::from(0) {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        if fp.is_empty() || !fp.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = ip.starts_with('-');
        let ip_abs = ip.trim_start_matches(['-', '+']);
        let whole: BigInt = if ip_abs.is_empty() { 0.into() } else { ip_abs.parse().ok()? };
        let frac: BigInt = fp.parse().ok()?;
        let scale = BigInt::from(10).pow(fp.len() as u32);
        let v = Rational::new(whole * &scale + frac, scale);
        return Some(if neg { -v } else { v });
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_and_parse() {
        assert_eq!(render(&rat(5, 2)), "5/2");
        assert_eq!(render(&rat(-4, 2)), "-2");
        assert_eq!(parse_rational("5/2"), Some(rat(5, 2)));
        assert_eq!(parse_rational("-2.25"), Some(rat(-9, 4)));
        assert_eq!(parse_rational("0.5"), Some(rat(1, 2)));
        assert_eq!(parse_rational("7"), Some(rat(7, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }
}
