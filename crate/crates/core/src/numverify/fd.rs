use rayon::prelude::*;
use serde::Serialize;

use super::{GridSpec, NumericPotential};
use crate::error::{Error, Result};
use crate::extensions::ExtensionSpec;
use crate::ratpoly::{to_f64, Rational};
use crate::report::{ser_f64s, ser_opt_f64};

/// Lowest eigenvalues on two grids and their Richardson extrapolation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigReport {
    pub grid: GridSpec,
    pub refined_grid: GridSpec,
    pub k: usize,
    /// Extrapolated values `(4 E(h/2) - E(h)) / 3`, ascending.
    #[serde(serialize_with = "ser_f64s")]
    pub computed: Vec<f64>,
    #[serde(serialize_with = "ser_f64s")]
    pub coarse: Vec<f64>,
    #[serde(serialize_with = "ser_f64s")]
    pub fine: Vec<f64>,
    /// Empty unless compared with exact levels.
    #[serde(serialize_with = "ser_f64s")]
    pub analytic: Vec<f64>,
    #[serde(serialize_with = "ser_f64s")]
    pub abs_errors: Vec<f64>,
    #[serde(serialize_with = "ser_opt_f64")]
    pub max_abs_error: Option<f64>,
}

impl EigReport {
    pub fn with_analytic(mut self, levels: &[Rational]) -> Self {
        self.analytic = levels.iter().map(to_f64).collect();
        self.abs_errors = self
            .computed
            .iter()
            .zip(&self.analytic)
            .map(|(c, a)| (c - a).abs())
            .collect();
        self.max_abs_error = self.abs_errors.iter().cloned().reduce(f64::max);
        self
    }

    pub fn within(&self, tol: f64) -> bool {
        self.analytic.len() == self.computed.len()
            && self.abs_errors.iter().all(|e| *e <= tol)
    }
}

/// Number of eigenvalues of the symmetric tridiagonal matrix below `lambda`.
fn sturm_count(diag: &[f64], off: &[f64], lambda: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0;
    for (i, d) in diag.iter().enumerate() {
        let e2 = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] };
        q = d - lambda - if i == 0 { 0.0 } else { e2 / q };
        if q == 0.0 {
            q = -f64::EPSILON * (d.abs() + lambda.abs() + 1.0);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Lowest `k` eigenvalues of the symmetric tridiagonal matrix with the given
/// diagonal and off-diagonal, by bisection on the Sturm count.
pub fn tridiagonal_lowest(diag: &[f64], off: &[f64], k: usize) -> Vec<f64> {
    let n = diag.len();
    let radius = |i: usize| {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i + 1 < n { off[i].abs() } else { 0.0 };
        left + right
    };
    let lo0 = (0..n).map(|i| diag[i] - radius(i)).fold(f64::INFINITY, f64::min);
    let hi0 = (0..n).map(|i| diag[i] + radius(i)).fold(f64::NEG_INFINITY, f64::max);
    let mut out = Vec::with_capacity(k);
    for j in 0..k.min(n) {
        let mut lo = out.last().copied().unwrap_or(lo0);
        let mut hi = hi0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if sturm_count(diag, off, mid) > j {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        out.push(0.5 * (lo + hi));
    }
    out
}

fn eigs_on(pot: &NumericPotential, grid: &GridSpec, k: usize) -> Result<Vec<f64>> {
    let h = grid.h();
    let samples = pot.sample(grid)?;
    let diag: Vec<f64> = samples.iter().map(|(_, v)| 2.0 / (h * h) + v).collect();
    let off = vec![-1.0 / (h * h); grid.points - 1];
    Ok(tridiagonal_lowest(&diag, &off, k))
}

/// Lowest `k` eigenvalues of `-psi'' + V psi` with Dirichlet conditions,
/// second-order central differences on `grid` and on the grid with half the
/// spacing, Richardson-extrapolated.
pub fn fd_eigs(pot: &NumericPotential, grid: &GridSpec, k: usize) -> Result<EigReport> {
    if k == 0 || k > grid.points {
        return Err(Error::Unresolvable {
            requested: k,
            detail: format!("grid has {} points", grid.points),
        });
    }
    let refined = grid.refined();
    let coarse = eigs_on(pot, grid, k)?;
    let fine = eigs_on(pot, &refined, k)?;
    let computed: Vec<f64> = coarse
        .iter()
        .zip(&fine)
        .map(|(c, f)| (4.0 * f - c) / 3.0)
        .collect();

    // a level at or above the potential at an open end is a box state
    let mut walls = vec![pot.eval(grid.b)];
    if !pot.half_line() {
        walls.push(pot.eval(grid.a));
    }
    let cap = walls.into_iter().fold(f64::INFINITY, f64::min);
    let top = computed[k - 1];
    if !(top < cap) {
        return Err(Error::Unresolvable {
            requested: k,
            detail: format!("level {top} is not below the boundary potential {cap}"),
        });
    }
    Ok(EigReport {
        grid: *grid,
        refined_grid: refined,
        k,
        computed,
        coarse,
        fine,
        analytic: Vec::new(),
        abs_errors: Vec::new(),
        max_abs_error: None,
    })
}

/// Independent `fd_eigs` jobs, run concurrently; results keep the input order.
pub fn fd_eigs_batch(jobs: &[(NumericPotential, GridSpec, usize)]) -> Vec<Result<EigReport>> {
    jobs.par_iter().map(|(p, g, k)| fd_eigs(p, g, *k)).collect()
}

/// `fd_eigs` on the partner potential of an extension, compared with its
/// lowest `k` exact levels.
pub fn spectrum_check(spec: &ExtensionSpec, grid: &GridSpec, k: usize) -> Result<EigReport> {
    let pot = NumericPotential::from_record(&spec.potential);
    let levels: Vec<Rational> = spec
        .spectrum
        .first_nus(k)
        .into_iter()
        .map(|nu| spec.energy(nu))
        .collect();
    Ok(fd_eigs(&pot, grid, k)?.with_analytic(&levels))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_matches_closed_form() {
        // tridiag(-1, 2, -1) of size n: 2 - 2 cos(j pi / (n + 1))
        let n = 50;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        let got = tridiagonal_lowest(&diag, &off, 5);
        for (j, g) in got.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((g - exact).abs() < 1e-13, "{j}: {g} vs {exact}");
        }
    }

    #[test]
    fn too_many_levels() {
        let grid = GridSpec::new(-3.0, 3.0, 200).unwrap();
        let err = fd_eigs(&NumericPotential::oscillator(), &grid, 10).unwrap_err();
        assert!(matches!(err, Error::Unresolvable { requested: 10, .. }));
        let err = fd_eigs(&NumericPotential::oscillator(), &grid, 500).unwrap_err();
        assert!(matches!(err, Error::Unresolvable { .. }));
    }
}
