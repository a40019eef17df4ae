use serde::Serialize;

use super::{F64Poly, GridSpec, NumericPotential};
use crate::error::{Error, Result};
use crate::extensions::{ExtensionSpec, WeightKind};
use crate::families::hermite;
use crate::ratpoly::{to_f64, Poly};
use crate::report::ser_f64;

/// `psi(x) = prefactor(x) y(s) / den(s)`, `s = x` for the Gaussian form and
/// `s = x^2/2` with prefactor `x^(alpha + 1/2) exp(-x^2/4)` for the radial form.
#[derive(Clone, Debug)]
pub struct ClosedFormState {
    pub potential: NumericPotential,
    pub energy: f64,
    /// `None` for the Gaussian form.
    alpha: Option<f64>,
    y: F64Poly,
    den: F64Poly,
}

impl ClosedFormState {
    /// Level `nu` of the partner of an extension.
    pub fn partner(spec: &ExtensionSpec, nu: i64) -> Result<Self> {
        let eop = spec.eop(nu)?;
        let alpha = match &spec.weight.kind {
            WeightKind::Gaussian => None,
            WeightKind::Laguerre { alpha } => Some(to_f64(alpha)),
        };
        Ok(ClosedFormState {
            potential: NumericPotential::from_record(&spec.potential),
            energy: to_f64(&spec.energy(nu)),
            alpha,
            y: F64Poly::new(&eop.coeffs),
            den: F64Poly::new(&spec.weight.denominator),
        })
    }

    /// `H_nu(x) exp(-x^2/2)` for `V = x^2`.
    pub fn oscillator(nu: usize) -> Self {
        ClosedFormState {
            potential: NumericPotential::oscillator(),
            energy: (2 * nu + 1) as f64,
            alpha: None,
            y: F64Poly::new(&hermite(nu)),
            den: F64Poly::new(&Poly::one()),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.alpha {
            None => (-x * x / 2.0).exp() * self.y.eval(x) / self.den.eval(x),
            Some(alpha) => {
                let z = x * x / 2.0;
                x.powf(alpha + 0.5) * (-z / 2.0).exp() * self.y.eval(z) / self.den.eval(z)
            }
        }
    }
}

/// Closed-form eigenfunction of level `nu` of the partner, as a function of `x`.
pub fn wavefunction(spec: &ExtensionSpec, nu: i64) -> Result<impl Fn(f64) -> f64> {
    let s = ClosedFormState::partner(spec, nu)?;
    Ok(move |x| s.eval(x))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WaveReport {
    #[serde(serialize_with = "ser_f64")]
    pub energy: f64,
    pub grid: GridSpec,
    /// `||(-d^2 + V - E) psi|| / ||psi||` over the grid nodes.
    #[serde(serialize_with = "ser_f64")]
    pub residual: f64,
    #[serde(serialize_with = "ser_f64")]
    pub stencil_step: f64,
}

const STENCIL: [f64; 5] = [-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];
const STEP: f64 = 1e-2;

fn second_derivative(f: &impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let mut acc = STENCIL[0] * f(x);
    for (k, c) in STENCIL.iter().enumerate().skip(1) {
        let d = k as f64 * h;
        acc += c * (f(x + d) + f(x - d));
    }
    acc / (h * h)
}

/// Relative residual of a closed-form state, with an eighth-order
/// second-derivative stencil.
pub fn state_residual(state: &ClosedFormState, grid: &GridSpec) -> Result<WaveReport> {
    let half_line = state.potential.half_line();
    if half_line && grid.a < 0.0 {
        return Err(Error::InvalidGrid(format!(
            "half-line state on a grid starting at {}",
            grid.a
        )));
    }
    let f = |x: f64| state.eval(x);
    let (mut num, mut den) = (0.0, 0.0);
    for x in grid.nodes() {
        // keep the stencil inside the half-line
        let h = if half_line { STEP.min(x / 5.0) } else { STEP };
        let psi = f(x);
        let v = state.potential.eval(x);
        if !(v.is_finite() && psi.is_finite()) {
            return Err(Error::NonFinitePotential(x));
        }
        let r = -second_derivative(&f, x, h) + (v - state.energy) * psi;
        num += r * r;
        den += psi * psi;
    }
    Ok(WaveReport {
        energy: state.energy,
        grid: *grid,
        residual: (num / den).sqrt(),
        stencil_step: STEP,
    })
}

/// `state_residual` for level `nu` of the partner of an extension.
pub fn wavefunction_check(spec: &ExtensionSpec, nu: i64, grid: &GridSpec) -> Result<WaveReport> {
    state_residual(&ClosedFormState::partner(spec, nu)?, grid)
}
