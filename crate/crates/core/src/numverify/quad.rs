use serde::Serialize;

use super::F64Poly;
use crate::error::{Error, Result};
use crate::extensions::{ExtensionFamily, ExtensionSpec, WeightKind};
use crate::ratpoly::to_f64;
use crate::report::{ser_f64, ser_f64_matrix};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QuadConfig {
    /// Gauss-Legendre nodes per panel.
    pub order: usize,
    pub initial_panels: usize,
    pub max_panels: usize,
    /// Agreement required between two panel counts, relative to the diagonal.
    #[serde(serialize_with = "ser_f64")]
    pub tol: f64,
    /// Integrand is dropped where it falls below this fraction of its peak.
    #[serde(serialize_with = "ser_f64")]
    pub floor: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            order: 20,
            initial_panels: 16,
            max_panels: 4096,
            tol: 1e-12,
            floor: 1e-30,
        }
    }
}

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// Gram matrix of a list of EOP under the family weight.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GramReport {
    pub family: ExtensionFamily,
    pub degrees: Vec<usize>,
    pub nus: Vec<i64>,
    #[serde(serialize_with = "ser_f64_matrix")]
    pub matrix: Vec<Vec<f64>>,
    /// Largest `|G_ij| / sqrt(G_ii G_jj)` over `i != j`.
    #[serde(serialize_with = "ser_f64")]
    pub max_offdiag_ratio: f64,
    /// Integration range in the quadrature variable, `x` or `sqrt(z)`.
    #[serde(serialize_with = "ser_f64")]
    pub cutoff: f64,
    pub panels: usize,
    pub config: QuadConfig,
}

/// The integrand after the change of variable: the real line in `x` for
/// Hermite, `z = t^2` on `t > 0` for Laguerre.
struct Integrand {
    kind: WeightKind,
    alpha: f64,
    den: F64Poly,
    polys: Vec<F64Poly>,
}

impl Integrand {
    fn symmetric(&self) -> bool {
        matches!(self.kind, WeightKind::Gaussian)
    }

    /// Weight times Jacobian at `t`, and the polynomial argument.
    fn weight(&self, t: f64) -> (f64, f64) {
        match self.kind {
            WeightKind::Gaussian => {
                let d = self.den.eval(t);
                ((-t * t).exp() / (d * d), t)
            }
            WeightKind::Laguerre { .. } => {
                let z = t * t;
                let d = self.den.eval(z);
                let w = (self.alpha * z.ln() - z).exp() / (d * d);
                (2.0 * t * w, z)
            }
        }
    }

    fn envelope(&self, t: f64) -> f64 {
        let (w, arg) = self.weight(t);
        self.polys
            .iter()
            .map(|p| {
                let v = p.eval(arg);
                w * v * v
            })
            .fold(0.0, f64::max)
    }

    /// Smallest `T` past the peak with the envelope below `floor * peak` from there on.
    fn cutoff(&self, floor: f64) -> Result<f64> {
        let step = 0.25;
        let mut peak: f64 = 0.0;
        let mut t = step;
        while t < 1000.0 {
            let e = self.envelope(t);
            if !e.is_finite() {
                return Err(Error::QuadratureNonConvergence(format!(
                    "non-finite integrand at t = {t}"
                )));
            }
            peak = peak.max(e);
            if peak > 0.0 && e < floor * peak {
                return Ok(t);
            }
            t += step;
        }
        Err(Error::QuadratureNonConvergence(
            "integrand does not decay below the floor".to_string(),
        ))
    }

    fn gram(&self, cutoff: f64, panels: usize, rule: &(Vec<f64>, Vec<f64>)) -> Vec<Vec<f64>> {
        let k = self.polys.len();
        let lo = if self.symmetric() { -cutoff } else { 0.0 };
        let width = (cutoff - lo) / panels as f64;
        let mut g = vec![vec![0.0; k]; k];
        let mut vals = vec![0.0; k];
        for p in 0..panels {
            let a = lo + p as f64 * width;
            for (x, w) in rule.0.iter().zip(&rule.1) {
                let t = a + 0.5 * width * (x + 1.0);
                let (wt, arg) = self.weight(t);
                let wt = wt * w * 0.5 * width;
                for (v, poly) in vals.iter_mut().zip(&self.polys) {
                    *v = poly.eval(arg);
                }
                for i in 0..k {
                    for j in i..k {
                        g[i][j] += wt * vals[i] * vals[j];
                    }
                }
            }
        }
        for i in 0..k {
            for j in 0..i {
                g[i][j] = g[j][i];
            }
        }
        g
    }
}

fn nu_for_degree(spec: &ExtensionSpec, n: usize) -> Result<i64> {
    (spec.spectrum.lowest_nu()..=n as i64)
        .find(|&nu| spec.eop_degree(nu) == Some(n))
        .ok_or_else(|| Error::InvalidArgument(format!("no EOP of degree {n} in this family")))
}

fn max_scaled_difference(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..a.len() {
        for j in 0..a.len() {
            let scale = (b[i][i] * b[j][j]).abs().sqrt();
            worst = worst.max((a[i][j] - b[i][j]).abs() / scale);
        }
    }
    worst
}

/// Gram matrix of the EOP of the given degrees, by composite Gauss-Legendre
/// quadrature; the panel count is doubled until two successive matrices agree.
pub fn ortho_gram(spec: &ExtensionSpec, degrees: &[usize], cfg: &QuadConfig) -> Result<GramReport> {
    let nus = degrees
        .iter()
        .map(|&n| nu_for_degree(spec, n))
        .collect::<Result<Vec<_>>>()?;
    let polys = nus
        .iter()
        .map(|&nu| spec.eop(nu).map(|e| F64Poly::new(&e.coeffs)))
        .collect::<Result<Vec<_>>>()?;
    let alpha = match &spec.weight.kind {
        WeightKind::Laguerre { alpha } => to_f64(alpha),
        WeightKind::Gaussian => 0.0,
    };
    let integrand = Integrand {
        kind: spec.weight.kind.clone(),
        alpha,
        den: F64Poly::new(&spec.weight.denominator),
        polys,
    };
    let cutoff = integrand.cutoff(cfg.floor)?;
    let rule = gauss_legendre(cfg.order);
    let mut panels = cfg.initial_panels.max(1);
    let mut prev = integrand.gram(cutoff, panels, &rule);
    loop {
        if 2 * panels > cfg.max_panels {
            return Err(Error::QuadratureNonConvergence(format!(
                "no agreement to {} with up to {} panels",
                cfg.tol, cfg.max_panels
            )));
        }
        panels *= 2;
        let next = integrand.gram(cutoff, panels, &rule);
        let converged = max_scaled_difference(&prev, &next) < cfg.tol;
        prev = next;
        if converged {
            break;
        }
    }
    if let Some(i) = (0..prev.len()).find(|&i| !(prev[i][i] > 0.0)) {
        return Err(Error::ConstructionInconsistency(format!(
            "non-positive norm for degree {}",
            degrees[i]
        )));
    }
    let mut ratio: f64 = 0.0;
    for i in 0..prev.len() {
        for j in 0..prev.len() {
            if i != j {
                ratio = ratio.max(prev[i][j].abs() / (prev[i][i] * prev[j][j]).sqrt());
            }
        }
    }
    Ok(GramReport {
        family: spec.family,
        degrees: degrees.to_vec(),
        nus,
        matrix: prev,
        max_offdiag_ratio: ratio,
        cutoff,
        panels,
        config: cfg.clone(),
    })
}
