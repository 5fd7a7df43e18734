//! Exact finite-size computations for `T_N(φ_α)`: Levinson recursion,
//! the Gohberg–Semencul inverse, the trace and the smallest eigenvalue.
//!
//! The condition number of `T_N(φ_α)` grows like `N^{2α}`, which for the
//! sizes and exponents of interest exhausts double precision. Coefficients,
//! the recursion and entry sums therefore run in double-double arithmetic.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::dd::{dd, div, recip, to_f64};
use crate::error::{Error, Result};
use crate::symbols::{phi_coeffs_dd, SymbolSpec};

/// Largest size accepted by [`dense_inverse_oracle`].
pub const DENSE_ORACLE_MAX_N: usize = 1024;

/// Iteration cap for [`lambda_min`].
pub const LAMBDA_MIN_MAX_ITER: usize = 20_000;

/// `T_N(φ)`, stored through its first row.
#[derive(Debug, Clone)]
pub struct ToeplitzMatrix {
    n: usize,
    coeffs: Vec<TwoFloat>,
}

impl ToeplitzMatrix {
    /// Matrix dimension `N + 1`.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn coeff(&self, lag: usize) -> f64 {
        to_f64(self.coeffs[lag])
    }

    /// Entry `(k, l)` (0-based), `φ̂(l - k)`.
    pub fn get(&self, k: usize, l: usize) -> f64 {
        self.coeff(k.abs_diff(l))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let m = self.size();
        DMatrix::from_fn(m, m, |i, j| self.get(i, j))
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let m = self.size();
        assert_eq!(x.len(), m);
        let c: Vec<f64> = self.coeffs.iter().map(|&v| to_f64(v)).collect();
        (0..m).map(|i| (0..m).map(|j| c[i.abs_diff(j)] * x[j]).sum()).collect()
    }
}

/// `T_N(φ_α)` of size `N + 1`.
pub fn build_matrix(spec: &SymbolSpec, n: usize) -> Result<ToeplitzMatrix> {
    if n < 1 {
        return Err(Error::Invalid("N must be at least 1".into()));
    }
    Ok(ToeplitzMatrix { n, coeffs: phi_coeffs_dd(spec, n) })
}

struct Levinson {
    a: Vec<TwoFloat>,
    err: TwoFloat,
    reflections: Vec<f64>,
}

/// Levinson–Durbin on the autocorrelation `c_0..c_M`. Returns the monic
/// predictor `a` (so `a/E_M` is the first column of `T_M⁻¹`).
fn levinson(c: &[TwoFloat]) -> Result<Levinson> {
    let m = c.len() - 1;
    let mut a = vec![dd(0.0); m + 1];
    a[0] = dd(1.0);
    let mut err = c[0];
    if !(to_f64(err) > 0.0) {
        return Err(Error::Breakdown { step: 0, reflection: f64::NAN });
    }
    let mut reflections = Vec::with_capacity(m);
    let mut prev = a.clone();
    for step in 1..=m {
        let mut acc = c[step];
        for j in 1..step {
            acc += a[j] * c[step - j];
        }
        let k = -div(acc, err);
        let kf = to_f64(k);
        if !(kf.abs() < 1.0) {
            return Err(Error::Breakdown { step, reflection: kf });
        }
        prev[..step].copy_from_slice(&a[..step]);
        for j in 1..step {
            a[j] = prev[j] + k * prev[step - j];
        }
        a[step] = k;
        err *= dd(1.0) - k * k;
        reflections.push(kf);
    }
    Ok(Levinson { a, err, reflections })
}

/// The predictor polynomial `P_M(z) = Σ γ_u z^u`: the first column of
/// `T_M(φ)⁻¹` divided by the square root of its first entry.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PredictorPoly {
    pub degree: usize,
    pub gamma: Vec<f64>,
    /// Levinson reflection coefficients, steps `1..=M`.
    pub reflections: Vec<f64>,
    #[serde(skip)]
    gamma_dd: Vec<TwoFloat>,
}

impl PredictorPoly {
    pub(crate) fn from_dd(gamma_dd: Vec<TwoFloat>, reflections: Vec<f64>) -> Self {
        PredictorPoly {
            degree: gamma_dd.len() - 1,
            gamma: gamma_dd.iter().map(|&v| to_f64(v)).collect(),
            reflections,
            gamma_dd,
        }
    }

    /// A predictor given directly by its coefficients.
    pub fn from_coeffs(gamma: Vec<f64>) -> Result<Self> {
        if gamma.is_empty() || !(gamma[0] > 0.0) {
            return Err(Error::Invalid("predictor needs gamma_0 > 0".into()));
        }
        Ok(Self::from_dd(gamma.iter().map(|&v| dd(v)).collect(), Vec::new()))
    }

    pub(crate) fn gamma_dd(&self) -> &[TwoFloat] {
        &self.gamma_dd
    }

    /// `P(1)`.
    pub fn value_at_one(&self) -> f64 {
        to_f64(self.gamma_dd.iter().fold(dd(0.0), |s, &g| s + g))
    }

    /// `P'(1)`.
    pub fn derivative_at_one(&self) -> f64 {
        to_f64(self.gamma_dd.iter().enumerate().fold(dd(0.0), |s, (u, &g)| s + g * u as f64))
    }

    /// `|P(e^{iθ})|²`.
    pub fn modulus_sq(&self, theta: f64) -> f64 {
        let (mut re, mut im) = (0.0, 0.0);
        for (u, g) in self.gamma.iter().enumerate() {
            let (s, c) = (u as f64 * theta).sin_cos();
            re += g * c;
            im += g * s;
        }
        re * re + im * im
    }

    /// First column of `T_M(φ)⁻¹`, i.e. `γ₀ γ`.
    pub fn first_column(&self) -> Vec<f64> {
        let g0 = self.gamma_dd[0];
        self.gamma_dd.iter().map(|&g| to_f64(g0 * g)).collect()
    }
}

/// Predictor polynomial of degree `M` by the Levinson recursion on
/// `φ̂(0..=M)`.
pub fn predictor_poly(spec: &SymbolSpec, m: usize) -> Result<PredictorPoly> {
    let c = phi_coeffs_dd(spec, m);
    let lev = levinson(&c)?;
    let scale = recip(lev.err.sqrt());
    Ok(PredictorPoly::from_dd(lev.a.iter().map(|&a| a * scale).collect(), lev.reflections))
}

/// Gohberg–Semencul representation of `T_N(φ)⁻¹` from the degree-`N+1`
/// predictor `β`:
///
/// `(T_N⁻¹)_{k,l} = Σ_{u=0}^{k} β_{k-u} β_{l-u} - Σ_{u=N+1-l}^{N+1-l+k} β_u β_{u+l-k}`, `k ≤ l`.
///
/// Equivalently `T_N⁻¹ = L(a)L(a)ᵀ - L(b)L(b)ᵀ` with `L(·)` lower
/// triangular Toeplitz, `a = (β_0..β_N)` and `b_i = β_{N+1-i}`.
#[derive(Debug, Clone)]
pub struct GSInverse {
    n: usize,
    beta: Vec<TwoFloat>,
}

impl GSInverse {
    pub fn new(spec: &SymbolSpec, n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::Invalid("N must be at least 1".into()));
        }
        let p = predictor_poly(spec, n + 1)?;
        Ok(Self::from_predictor(&p))
    }

    /// From a predictor of degree `N + 1`.
    pub fn from_predictor(p: &PredictorPoly) -> Self {
        GSInverse { n: p.degree - 1, beta: p.gamma_dd().to_vec() }
    }

    /// Matrix dimension `N + 1`.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn beta(&self) -> Vec<f64> {
        self.beta.iter().map(|&b| to_f64(b)).collect()
    }

    pub(crate) fn entry_dd(&self, k: usize, l: usize) -> TwoFloat {
        let (k, l) = if k <= l { (k, l) } else { (l, k) };
        let b = &self.beta;
        let mut acc = dd(0.0);
        for u in 0..=k {
            acc += b[k - u] * b[l - u];
        }
        let start = self.n + 1 - l;
        for u in start..=start + k {
            acc -= b[u] * b[u + l - k];
        }
        acc
    }

    /// Diagonal of the inverse by running sums: `Σ_{i≤k} β_i² - Σ_{i>N-k} β_i²`.
    pub fn diagonal(&self) -> Vec<f64> {
        let n = self.n;
        let b = &self.beta;
        let mut head = dd(0.0);
        let mut tail = dd(0.0);
        (0..=n)
            .map(|k| {
                head += b[k] * b[k];
                tail += b[n + 1 - k] * b[n + 1 - k];
                to_f64(head - tail)
            })
            .collect()
    }

    pub fn trace(&self) -> f64 {
        let n = self.n;
        let b = &self.beta;
        let mut head = dd(0.0);
        let mut tail = dd(0.0);
        let mut total = dd(0.0);
        for k in 0..=n {
            head += b[k] * b[k];
            tail += b[n + 1 - k] * b[n + 1 - k];
            total += head - tail;
        }
        to_f64(total)
    }

    /// Column `k` of the inverse (entries `(j, k)` for `j = 0..=N`).
    pub fn column(&self, k: usize) -> Vec<f64> {
        (0..=self.n).map(|j| to_f64(self.entry_dd(j, k))).collect()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let m = self.size();
        let mut out = DMatrix::zeros(m, m);
        for k in 0..m {
            // walk each diagonal with the update
            // e(k+1, l+1) = e(k, l) + β_{k+1}β_{l+1} - β_{N-l}β_{N-k}
            let mut e = self.entry_dd(0, k);
            for i in 0..m - k {
                let (r, c) = (i, i + k);
                out[(r, c)] = to_f64(e);
                out[(c, r)] = to_f64(e);
                if c + 1 < m {
                    e += self.beta[r + 1] * self.beta[c + 1]
                        - self.beta[self.n - c] * self.beta[self.n - r];
                }
            }
        }
        out
    }

    /// `T_N⁻¹ x` through two pairs of triangular Toeplitz products.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let m = self.size();
        assert_eq!(x.len(), m);
        let beta = self.beta();
        let a = &beta[..m];
        let b: Vec<f64> = (0..m).map(|i| beta[self.n + 1 - i]).collect();
        let mut y = lower_apply(a, &lower_t_apply(a, x));
        let z = lower_apply(&b, &lower_t_apply(&b, x));
        for (yi, zi) in y.iter_mut().zip(z) {
            *yi -= zi;
        }
        y
    }
}

/// `L(c) x` with `L(c)_{ij} = c_{i-j}` for `i ≥ j`.
fn lower_apply(c: &[f64], x: &[f64]) -> Vec<f64> {
    (0..x.len()).map(|i| (0..=i).map(|j| c[i - j] * x[j]).sum()).collect()
}

/// `L(c)ᵀ x`.
fn lower_t_apply(c: &[f64], x: &[f64]) -> Vec<f64> {
    let m = x.len();
    (0..m).map(|i| (i..m).map(|j| c[j - i] * x[j]).sum()).collect()
}

/// `(T_N⁻¹)_{k,l}` through the Gohberg–Semencul formula.
pub fn gs_entry(inv: &GSInverse, k: usize, l: usize) -> Result<f64> {
    if k > inv.n || l > inv.n {
        return Err(Error::Invalid(format!(
            "index ({k}, {l}) outside 0..={}",
            inv.n
        )));
    }
    Ok(to_f64(inv.entry_dd(k, l)))
}

/// `Tr T_N(φ)⁻¹`.
pub fn inverse_trace(spec: &SymbolSpec, n: usize) -> Result<f64> {
    Ok(GSInverse::new(spec, n)?.trace())
}

/// Smallest eigenvalue of `T_N(φ)` by power iteration on the inverse.
pub fn lambda_min(spec: &SymbolSpec, n: usize, tol: f64) -> Result<f64> {
    let inv = GSInverse::new(spec, n)?;
    lambda_min_of(&inv, tol)
}

/// Power iteration on a built inverse; starts from the half-sine
/// `sin(π(k+1)/(N+2))` and stops when the Rayleigh quotient settles to `tol`.
pub fn lambda_min_of(inv: &GSInverse, tol: f64) -> Result<f64> {
    let m = inv.size();
    let mut v: Vec<f64> = (0..m)
        .map(|k| (std::f64::consts::PI * (k + 1) as f64 / (m + 1) as f64).sin())
        .collect();
    normalize(&mut v);
    let mut mu = f64::NAN;
    for _ in 0..LAMBDA_MIN_MAX_ITER {
        let w = inv.apply(&v);
        let next: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        v = w;
        normalize(&mut v);
        if (next - mu).abs() <= tol * next.abs() {
            return Ok(1.0 / next);
        }
        mu = next;
    }
    Err(Error::NonConvergence { iterations: LAMBDA_MIN_MAX_ITER, last: 1.0 / mu })
}

fn normalize(v: &mut [f64]) {
    let s = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter_mut().for_each(|x| *x /= s);
}

/// Dense inverse by a double-double Cholesky factorization; ground truth
/// for tests.
pub fn dense_inverse_oracle(spec: &SymbolSpec, n: usize) -> Result<DMatrix<f64>> {
    if n > DENSE_ORACLE_MAX_N {
        return Err(Error::Invalid(format!(
            "dense oracle limited to N <= {DENSE_ORACLE_MAX_N} (got {n})"
        )));
    }
    let t = build_matrix(spec, n)?;
    let m = t.size();
    let c = &t.coeffs;
    // lower Cholesky factor, row-major
    let mut l = vec![dd(0.0); m * m];
    for j in 0..m {
        let mut d = c[0];
        for p in 0..j {
            d -= l[j * m + p] * l[j * m + p];
        }
        if !(to_f64(d) > 0.0) {
            return Err(Error::Factorization(format!("matrix not positive definite at pivot {j}")));
        }
        let d = d.sqrt();
        l[j * m + j] = d;
        for i in j + 1..m {
            let mut s = c[i - j];
            for p in 0..j {
                s -= l[i * m + p] * l[j * m + p];
            }
            l[i * m + j] = div(s, d);
        }
    }
    // L⁻¹ column by column, then T⁻¹ = L⁻ᵀ L⁻¹
    let mut linv = vec![dd(0.0); m * m];
    for col in 0..m {
        linv[col * m + col] = recip(l[col * m + col]);
        for i in col + 1..m {
            let mut s = dd(0.0);
            for p in col..i {
                s += l[i * m + p] * linv[p * m + col];
            }
            linv[i * m + col] = -div(s, l[i * m + i]);
        }
    }
    let mut out = DMatrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let mut s = dd(0.0);
            for p in j..m {
                s += linv[p * m + i] * linv[p * m + j];
            }
            out[(i, j)] = to_f64(s);
            out[(j, i)] = to_f64(s);
        }
    }
    Ok(out)
}
