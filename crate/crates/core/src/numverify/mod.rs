//! Floating-point cross-checks of the exact constructions: a
//! finite-difference eigensolver, quadrature Gram matrices of the EOP and
//! residuals of the closed-form wavefunctions.

mod fd;
mod quad;
mod wave;

pub use fd::{fd_eigs, fd_eigs_batch, spectrum_check, tridiagonal_lowest, EigReport};
pub use quad::{gauss_legendre, ortho_gram, GramReport, QuadConfig};
pub use wave::{state_residual, wavefunction, wavefunction_check, ClosedFormState, WaveReport};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extensions::{BasePotential, PotentialRecord};
use crate::ratpoly::{int, to_f64, Poly, RatFunc, Rational};
use crate::report::ser_f64;

/// Dirichlet grid of `points` interior nodes `x_i = a + i h`, `h = (b - a)/(points + 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    #[serde(serialize_with = "ser_f64")]
    pub a: f64,
    #[serde(serialize_with = "ser_f64")]
    pub b: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn new(a: f64, b: f64, points: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || b <= a {
            return Err(Error::InvalidGrid(format!("domain [{a}, {b}] must satisfy b > a")));
        }
        if points < 16 {
            return Err(Error::InvalidGrid(format!("{points} points, at least 16 required")));
        }
        Ok(GridSpec { a, b, points })
    }

    pub fn h(&self) -> f64 {
        (self.b - self.a) / (self.points + 1) as f64
    }

    pub fn x(&self, i: usize) -> f64 {
        self.a + i as f64 * self.h()
    }

    /// Interior nodes `x_1 .. x_points`.
    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.points).map(|i| self.x(i))
    }

    /// Same domain with the spacing halved.
    pub fn refined(&self) -> GridSpec {
        GridSpec {
            points: 2 * self.points + 1,
            ..*self
        }
    }
}

/// Polynomial with `f64` coefficients for repeated evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct F64Poly(Vec<f64>);

impl F64Poly {
    pub fn new(p: &Poly) -> Self {
        F64Poly(p.coeffs().iter().map(to_f64).collect())
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }
}

/// `base(x) + num(x)/den(x) + constant`, evaluated in `f64`.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericPotential {
    pub base: BasePotential,
    /// `l (l + 1)` of a radial base.
    centrifugal: f64,
    num: F64Poly,
    den: F64Poly,
    constant: f64,
}

impl NumericPotential {
    pub fn new(base: BasePotential, rational: &RatFunc, constant: &Rational) -> Self {
        let centrifugal = match &base {
            BasePotential::Oscillator => 0.0,
            BasePotential::Radial { l } => to_f64(&(l * (l + int(1)))),
        };
        NumericPotential {
            base,
            centrifugal,
            num: F64Poly::new(rational.num()),
            den: F64Poly::new(rational.den()),
            constant: to_f64(constant),
        }
    }

    pub fn from_record(r: &PotentialRecord) -> Self {
        Self::new(r.base.clone(), &r.rational, &r.constant)
    }

    /// `x^2`.
    pub fn oscillator() -> Self {
        Self::new(BasePotential::Oscillator, &RatFunc::zero(), &int(0))
    }

    /// `x^2/4 + l(l+1)/x^2`.
    pub fn radial(l: &Rational) -> Self {
        Self::new(
            BasePotential::Radial { l: l.clone() },
            &RatFunc::zero(),
            &int(0),
        )
    }

    /// Whether the potential lives on `(0, inf)` with a wall at `0`.
    pub fn half_line(&self) -> bool {
        matches!(self.base, BasePotential::Radial { .. })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let base = match self.base {
            BasePotential::Oscillator => x * x,
            BasePotential::Radial { .. } => x * x / 4.0 + self.centrifugal / (x * x),
        };
        base + self.num.eval(x) / self.den.eval(x) + self.constant
    }

    /// `V` at the grid nodes; any non-finite value is an error.
    pub fn sample(&self, grid: &GridSpec) -> Result<Vec<(f64, f64)>> {
        if self.half_line() && grid.a < 0.0 {
            return Err(Error::InvalidGrid(format!(
                "half-line potential on a grid starting at {}",
                grid.a
            )));
        }
        grid.nodes()
            .map(|x| {
                let v = self.eval(x);
                if v.is_finite() {
                    Ok((x, v))
                } else {
                    Err(Error::NonFinitePotential(x))
                }
            })
            .collect()
    }
}
