//! Two estimates of `c_α`: through the spectral radius of the integral
//! operator with kernel `G_α`, and by extrapolating `N^{2α} λ_min(T_N)`.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{kernel_g, kernel_g_row_integral};
use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;
use crate::special::log_gamma;
use crate::symbols::SymbolSpec;
use crate::toeplitz::{lambda_min, LAMBDA_MIN_MAX_ITER};

pub const DEFAULT_RESOLUTIONS: [usize; 3] = [64, 128, 256];
pub const DEFAULT_SIZES: [usize; 3] = [256, 512, 1024];
pub const POWER_TOL: f64 = 1e-13;

/// A Nyström discretization of `f ↦ ∫_0^1 K(·, y) f(y) dy` on Gauss–Legendre
/// nodes.
///
/// `kmat` holds `K(x_i, x_j)` off the diagonal. For `G_α` the diagonal is
/// chosen so that every row reproduces the exact row integral
/// `∫ G_α(x_i, y) dy`, which keeps the scheme consistent across the cusp
/// (and the singularity when `α ≤ 1/2`).
#[derive(Debug, Clone)]
pub struct KernelOperator {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub kmat: DMatrix<f64>,
}

impl KernelOperator {
    /// Plain Nyström matrix of a smooth kernel, diagonal included.
    pub fn from_fn(m: usize, k: impl Fn(f64, f64) -> f64) -> Self {
        let (nodes, weights) = GaussLegendre::new(m).unit_interval();
        let kmat = DMatrix::from_fn(m, m, |i, j| k(nodes[i], nodes[j]));
        KernelOperator { nodes, weights, kmat }
    }

    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// `W^{1/2} K W^{1/2}`, symmetric and similar to `K W`.
    pub fn weighted(&self) -> DMatrix<f64> {
        let sw: Vec<f64> = self.weights.iter().map(|w| w.sqrt()).collect();
        DMatrix::from_fn(self.size(), self.size(), |i, j| sw[i] * self.kmat[(i, j)] * sw[j])
    }
}

/// Nyström operator for `G_α` at resolution `m`.
pub fn nystrom(alpha: f64, m: usize) -> Result<KernelOperator> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain("nystrom", format!("alpha = {alpha} must be positive")));
    }
    if m < 8 {
        return Err(Error::Invalid(format!("resolution m = {m} must be at least 8")));
    }
    let (nodes, weights) = GaussLegendre::new(m).unit_interval();
    let rows: Vec<Vec<f64>> = (0..m)
        .into_par_iter()
        .map(|i| {
            (0..m)
                .map(|j| if j <= i { Ok(0.0) } else { kernel_g(alpha, nodes[i], nodes[j]) })
                .collect::<Result<Vec<f64>>>()
        })
        .collect::<Result<_>>()?;
    let mut kmat = DMatrix::from_fn(m, m, |i, j| if i <= j { rows[i][j] } else { rows[j][i] });
    for i in 0..m {
        let off: f64 = (0..m).filter(|&j| j != i).map(|j| weights[j] * kmat[(i, j)]).sum();
        let row = kernel_g_row_integral(alpha, nodes[i])?;
        kmat[(i, i)] = (row - off) / weights[i];
    }
    Ok(KernelOperator { nodes, weights, kmat })
}

/// Largest eigenvalue of the operator and its eigenvector (in the
/// `W^{1/2}`-scaled coordinates), by power iteration from the constant
/// vector with a relative Rayleigh-quotient stop.
pub fn power_iteration(op: &KernelOperator, tol: f64) -> Result<(f64, Vec<f64>)> {
    let s = op.weighted();
    let n = op.size();
    let mut v = nalgebra::DVector::from_element(n, 1.0 / (n as f64).sqrt());
    let mut rho = 0.0;
    for _ in 0..LAMBDA_MIN_MAX_ITER {
        let w = &s * &v;
        let next = v.dot(&w);
        let norm = w.norm();
        if norm == 0.0 {
            return Ok((0.0, v.iter().copied().collect()));
        }
        v = w / norm;
        if (next - rho).abs() <= tol * next.abs() {
            return Ok((next, v.iter().copied().collect()));
        }
        rho = next;
    }
    Err(Error::NonConvergence { iterations: LAMBDA_MIN_MAX_ITER, last: rho })
}

pub fn spectral_radius(op: &KernelOperator, tol: f64) -> Result<f64> {
    power_iteration(op, tol).map(|(rho, _)| rho)
}

/// `ln ∫_0^1 (∗^s G_α)(t, t) dt`, approximated by `ln tr((K W)^s)`.
///
/// For `s = 1` and `α > 1/2` the trace is the plain quadrature of the
/// diagonal `G_α(t, t)`. Otherwise it is `Σ λ_i^s` over the eigenvalues of
/// the Nyström matrix, summed relative to the largest one so that large `s`
/// neither overflows nor underflows.
pub fn log_iterated_trace(alpha: f64, s: u32, m: usize) -> Result<f64> {
    if s == 0 {
        return Err(Error::Invalid("s must be at least 1".into()));
    }
    if 2.0 * alpha * s as f64 <= 1.0 {
        return Err(Error::domain(
            "iterated_trace",
            format!("the {s}-fold kernel of G_alpha is not trace class for alpha = {alpha}"),
        ));
    }
    if s == 1 && alpha > 0.5 {
        let (x, w) = GaussLegendre::new(m).unit_interval();
        let mut acc = 0.0;
        for (t, wt) in x.iter().zip(&w) {
            acc += wt * kernel_g(alpha, *t, *t)?;
        }
        return Ok(acc.ln());
    }
    let op = nystrom(alpha, m)?;
    let eig = SymmetricEigen::new(op.weighted()).eigenvalues;
    let top = eig.iter().fold(0.0f64, |a, &l| a.max(l.abs()));
    let sum: f64 = eig.iter().map(|l| (l / top).powi(s as i32)).sum();
    Ok(s as f64 * top.ln() + sum.ln())
}

pub fn iterated_trace(alpha: f64, s: u32, m: usize) -> Result<f64> {
    log_iterated_trace(alpha, s, m).map(f64::exp)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Kernel,
    Toeplitz,
}

/// An estimate of `c_α` with the raw sequence it was extrapolated from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CAlphaEstimate {
    pub alpha: f64,
    pub method: Method,
    /// `(resolution, value)` pairs.
    pub raw: Vec<(usize, f64)>,
    pub extrapolated: f64,
    /// Relative change between the last two raw values.
    pub err_indicator: f64,
    /// Whether `extrapolated` lies between the last two raw values.
    pub bracketed: bool,
}

impl CAlphaEstimate {
    fn new(alpha: f64, method: Method, raw: Vec<(usize, f64)>) -> Self {
        let hs: Vec<f64> = raw.iter().map(|(n, _)| 1.0 / *n as f64).collect();
        let vals: Vec<f64> = raw.iter().map(|(_, v)| *v).collect();
        let extrapolated = richardson(&hs, &vals);
        let (a, b) = match vals.len() {
            0 => (f64::NAN, f64::NAN),
            1 => (vals[0], vals[0]),
            k => (vals[k - 2], vals[k - 1]),
        };
        CAlphaEstimate {
            alpha,
            method,
            raw,
            extrapolated,
            err_indicator: ((b - a) / b).abs(),
            bracketed: extrapolated >= a.min(b) && extrapolated <= a.max(b),
        }
    }
}

/// Value at `h = 0` of the polynomial in `h` through `(hs[i], vals[i])`,
/// by Neville's tableau. Two points remove the first-order error, three
/// the first two orders.
pub fn richardson(hs: &[f64], vals: &[f64]) -> f64 {
    assert_eq!(hs.len(), vals.len());
    let mut p = vals.to_vec();
    for level in 1..p.len() {
        for i in (level..p.len()).rev() {
            let (h0, h1) = (hs[i - level], hs[i]);
            p[i] = (h0 * p[i] - h1 * p[i - 1]) / (h0 - h1);
        }
    }
    p.last().copied().unwrap_or(f64::NAN)
}

fn check_alpha_c(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain("c_alpha", format!("alpha = {alpha} must be positive")));
    }
    if alpha == 0.5 {
        return Err(Error::Excluded(
            "c_alpha is not defined at alpha = 1/2, where lambda_min decays like 1/(N ln N); see bounds::half_case_lower"
                .into(),
        ));
    }
    Ok(())
}

/// `c_α = Γ²(α)/ρ(G_α)`, with `ρ` extrapolated in `1/m` over `resolutions`.
pub fn c_alpha_kernel(alpha: f64, resolutions: &[usize]) -> Result<CAlphaEstimate> {
    c_alpha_kernel_with(alpha, resolutions, POWER_TOL)
}

/// [`c_alpha_kernel`] with an explicit power-iteration tolerance.
pub fn c_alpha_kernel_with(alpha: f64, resolutions: &[usize], tol: f64) -> Result<CAlphaEstimate> {
    check_alpha_c(alpha)?;
    if resolutions.is_empty() {
        return Err(Error::Invalid("no resolutions given".into()));
    }
    let lg = 2.0 * log_gamma(alpha)?;
    let mut raw = Vec::with_capacity(resolutions.len());
    for &m in resolutions {
        let rho = spectral_radius(&nystrom(alpha, m)?, tol)?;
        raw.push((m, (lg - rho.ln()).exp()));
    }
    Ok(CAlphaEstimate::new(alpha, Method::Kernel, raw))
}

/// `N^{2α} λ_min(T_N(φ_α)) / f₁(1)` over `sizes`, extrapolated in `1/N`.
pub fn c_alpha_toeplitz(spec: &SymbolSpec, sizes: &[usize]) -> Result<CAlphaEstimate> {
    c_alpha_toeplitz_with(spec, sizes, POWER_TOL)
}

/// [`c_alpha_toeplitz`] with an explicit eigenvalue tolerance.
pub fn c_alpha_toeplitz_with(spec: &SymbolSpec, sizes: &[usize], tol: f64) -> Result<CAlphaEstimate> {
    check_alpha_c(spec.alpha)?;
    if sizes.is_empty() {
        return Err(Error::Invalid("no sizes given".into()));
    }
    let f1 = spec.f1_at_one();
    let mut raw = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let lam = lambda_min(spec, n, tol)?;
        raw.push((n, lam * (n as f64).powf(2.0 * spec.alpha) / f1));
    }
    Ok(CAlphaEstimate::new(spec.alpha, Method::Toeplitz, raw))
}
