//! The symbol `φ_α(θ) = |1 - e^{iθ}|^{2α} f₁(e^{iθ})`, its Fourier
//! coefficients, the outer factor `g₁` of `f₁` and the power-series
//! coefficients `β_u` of `1/g` with `g = (1 - χ)^α g₁`.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::dd::div;
use crate::error::{Error, Result};
use crate::special::{gen_binom_neg_table, log_gamma, log_rgamma_signed};

/// Relative tolerance for the Hermitian-symmetry check.
const HERMITIAN_TOL: f64 = 1e-14;

/// A trigonometric polynomial `Σ_{|n|≤d} ĉ(n) e^{inθ}` that is real and
/// strictly positive on the circle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigPoly {
    /// Coefficients for `n = -d..=d`, stored at index `n + d`.
    coeffs: Vec<Complex64>,
}

impl TrigPoly {
    /// Builds a polynomial from its two-sided coefficient list
    /// `[ĉ(-d), ..., ĉ(0), ..., ĉ(d)]`.
    pub fn new(two_sided: Vec<Complex64>) -> Result<Self> {
        if two_sided.is_empty() || two_sided.len() % 2 == 0 {
            return Err(Error::Invalid(format!(
                "f1 needs an odd number of coefficients (got {})",
                two_sided.len()
            )));
        }
        if two_sided.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::Invalid("f1 coefficients must be finite".into()));
        }
        let d = two_sided.len() / 2;
        let scale = two_sided.iter().map(|c| c.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        for n in 0..=d {
            let a = two_sided[d + n];
            let b = two_sided[d - n].conj();
            if (a - b).norm() > HERMITIAN_TOL * scale {
                return Err(Error::Invalid(format!(
                    "f1 is not Hermitian: c({n}) = {a} but conj(c(-{n})) = {b}"
                )));
            }
        }
        let p = TrigPoly { coeffs: two_sided };
        let min = p.min_on_grid();
        if !(min > 1e-12 * p.max_abs_coeff_sum()) {
            return Err(Error::Invalid(format!(
                "f1 is not strictly positive on the circle (minimum {min:.3e})"
            )));
        }
        Ok(p)
    }

    /// Real even polynomial `c₀ + 2 Σ c_n cos(nθ)` from `[c₀, c₁, ..., c_d]`.
    pub fn real_even(one_sided: &[f64]) -> Result<Self> {
        if one_sided.is_empty() {
            return Err(Error::Invalid("f1 needs at least one coefficient".into()));
        }
        let d = one_sided.len() - 1;
        let two_sided = (0..=2 * d)
            .map(|i| Complex64::new(one_sided[i.abs_diff(d)], 0.0))
            .collect();
        Self::new(two_sided)
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::real_even(&[c])
    }

    pub fn one() -> Self {
        TrigPoly { coeffs: vec![Complex64::new(1.0, 0.0)] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() / 2
    }

    /// `ĉ(n)`, zero outside `[-d, d]`.
    pub fn coeff(&self, n: i64) -> Complex64 {
        let d = self.degree() as i64;
        if n.abs() > d {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + d) as usize]
        }
    }

    pub fn two_sided(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex64::new(1.0, 0.0)
    }

    /// True when every coefficient is real (the polynomial is then even).
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let d = self.degree() as i64;
        let z = Complex64::from_polar(1.0, theta);
        let mut acc = Complex64::new(0.0, 0.0);
        let mut zn = Complex64::from_polar(1.0, -(d as f64) * theta);
        for c in &self.coeffs {
            acc += c * zn;
            zn *= z;
        }
        acc.re
    }

    /// `f₁(1)`, the value at `θ = 0`.
    pub fn value_at_one(&self) -> f64 {
        self.coeffs.iter().map(|c| c.re).sum()
    }

    /// `Σ |n|^{3/2} |ĉ(n)|`.
    pub fn regularity_weight(&self) -> f64 {
        let d = self.degree() as i64;
        (-d..=d).map(|n| (n.abs() as f64).powf(1.5) * self.coeff(n).norm()).sum()
    }

    fn max_abs_coeff_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// Minimum over an even grid of `max(1024, 64(d+1))` points; the grid contains `θ = π`.
    pub fn min_on_grid(&self) -> f64 {
        let m = (64 * (self.degree() + 1)).max(1024);
        (0..m).map(|j| self.eval(2.0 * PI * j as f64 / m as f64)).fold(f64::INFINITY, f64::min)
    }
}

/// The pair `(α, f₁)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymbolSpec {
    pub alpha: f64,
    pub f1: TrigPoly,
}

impl SymbolSpec {
    /// Validates `α > -1/2`. `f₁` must have real coefficients: all the
    /// Toeplitz machinery here is real symmetric.
    pub fn new(alpha: f64, f1: TrigPoly) -> Result<Self> {
        if !(alpha > -0.5) || !alpha.is_finite() {
            return Err(Error::Invalid(format!("alpha = {alpha} must exceed -1/2")));
        }
        if !f1.is_real() {
            return Err(Error::Invalid(
                "f1 must have real coefficients (real symmetric Toeplitz matrices only)".into(),
            ));
        }
        Ok(SymbolSpec { alpha, f1 })
    }

    /// `f₁ ≡ 1`.
    pub fn pure(alpha: f64) -> Result<Self> {
        Self::new(alpha, TrigPoly::one())
    }

    pub fn f1_at_one(&self) -> f64 {
        self.f1.value_at_one()
    }

    /// `g₁(1) = sqrt(f₁(1))` for a real even `f₁`.
    pub fn g1_at_one(&self) -> f64 {
        self.f1_at_one().sqrt()
    }

    /// `β₀ = 1/g₁(0)`.
    pub fn beta0(&self) -> Result<f64> {
        if self.f1.is_one() {
            return Ok(1.0);
        }
        let g = spectral_factor(&self.f1, 0)?;
        Ok(1.0 / g.values[0])
    }

    /// `φ_α(θ)`.
    pub fn eval(&self, theta: f64) -> f64 {
        (2.0 - 2.0 * theta.cos()).powf(self.alpha) * self.f1.eval(theta)
    }
}

/// What a [`CoeffTable`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoeffKind {
    PhiHat,
    BetaAlpha,
    G1Coeffs,
}

/// A coefficient sequence indexed `0..=U`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoeffTable {
    pub kind: CoeffKind,
    pub values: Vec<f64>,
    /// Imaginary parts, present only for complex sequences.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imag: Option<Vec<f64>>,
}

impl CoeffTable {
    fn real(kind: CoeffKind, values: Vec<f64>) -> Self {
        CoeffTable { kind, values, imag: None }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `index,value` (or `index,re,im`) with a header row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        match &self.imag {
            None => {
                out.push_str("index,value\n");
                for (i, v) in self.values.iter().enumerate() {
                    let _ = writeln!(out, "{i},{}", crate::cli::fmt_f64(*v));
                }
            }
            Some(im) => {
                out.push_str("index,re,im\n");
                for (i, (re, im)) in self.values.iter().zip(im).enumerate() {
                    let _ = writeln!(
                        out,
                        "{i},{},{}",
                        crate::cli::fmt_f64(*re),
                        crate::cli::fmt_f64(*im)
                    );
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        crate::cli::to_json_string(&serde_json::to_value(self).expect("serializable"))
    }
}

/// Fourier coefficient `n` of `|1 - e^{iθ}|^{2a}` from the closed form
/// `(-1)^n Γ(2a+1) / (Γ(a+n+1) Γ(a-n+1))`, valid for `a > -1/2`.
pub(crate) fn pure_fourier_coeff(a: f64, n: i64) -> f64 {
    let m = n.unsigned_abs() as f64;
    let ln_num = log_gamma(2.0 * a + 1.0).expect("2a + 1 > 0");
    let (ln_r1, s1) = log_rgamma_signed(a + m + 1.0).expect("a + m + 1 > 0");
    let Some((ln_r2, s2)) = log_rgamma_signed(a - m + 1.0) else {
        // 1/Γ at a pole: integer a and |n| > a
        return 0.0;
    };
    let parity = if n.unsigned_abs() % 2 == 0 { 1.0 } else { -1.0 };
    parity * s1 * s2 * (ln_num + ln_r1 + ln_r2).exp()
}

/// The `n`-th Fourier coefficient of `φ_α`.
///
/// The pure singular part uses the closed Gamma form; a non-trivial `f₁`
/// is folded in by the (finite) convolution with its coefficients.
pub fn phi_fourier_coeff(spec: &SymbolSpec, n: i64) -> Result<f64> {
    let d = spec.f1.degree() as i64;
    let mut acc = 0.0;
    for j in -d..=d {
        let c = spec.f1.coeff(j).re;
        if c != 0.0 {
            acc += c * pure_fourier_coeff(spec.alpha, n - j);
        }
    }
    Ok(acc)
}

/// `Γ(2α+1)/Γ(α+1)²`. For `α ≥ 0` it is stepped up from the fractional
/// part by `c(a+1) = c(a)(2a+1)(2a+2)/(a+1)²`, so integer `α` is exact.
fn central_coeff_dd(alpha: f64) -> TwoFloat {
    let closed = |a: f64| {
        (log_gamma(2.0 * a + 1.0).expect("2a + 1 > 0") - 2.0 * log_gamma(a + 1.0).expect("a + 1 > 0")).exp()
    };
    if alpha < 0.0 || alpha > 1e4 {
        return TwoFloat::from(closed(alpha));
    }
    let mut a = alpha.fract();
    let mut c = if a == 0.0 { TwoFloat::from(1.0) } else { TwoFloat::from(closed(a)) };
    while a + 0.5 < alpha {
        let t = TwoFloat::from(a + 1.0);
        c = div(c * ((TwoFloat::from(2.0 * a) + 1.0) * (TwoFloat::from(2.0 * a) + 2.0)), t * t);
        a += 1.0;
    }
    c
}

/// Fourier coefficients `φ̂(0..=upto)` in double-double precision.
///
/// The pure part follows the ratio recurrence
/// `ĉ(m+1) = ĉ(m) (m - α)/(m + 1 + α)`, which is exact apart from
/// the `f64` rounding of `ĉ(0)`; that rounding only rescales the whole
/// matrix.
pub fn phi_coeffs_dd(spec: &SymbolSpec, upto: usize) -> Vec<TwoFloat> {
    let alpha = spec.alpha;
    let d = spec.f1.degree();
    let len = upto + d + 1;
    let mut pure = Vec::with_capacity(len);
    let mut c = central_coeff_dd(alpha);
    for m in 0..len {
        pure.push(c);
        let mf = m as f64;
        c = c * div(TwoFloat::from(mf) - alpha, TwoFloat::from(mf + 1.0) + alpha);
    }
    if spec.f1.is_one() {
        pure.truncate(upto + 1);
        return pure;
    }
    let di = d as i64;
    (0..=upto as i64)
        .map(|n| {
            let mut acc = TwoFloat::from(0.0);
            for j in -di..=di {
                let cj = spec.f1.coeff(j).re;
                if cj != 0.0 {
                    acc += pure[(n - j).unsigned_abs() as usize] * cj;
                }
            }
            acc
        })
        .collect()
}

/// Fourier coefficient `n` of `1/φ_α`.
pub fn inverse_phi_coeff(spec: &SymbolSpec, n: i64) -> Result<f64> {
    if !(spec.alpha < 0.5) {
        return Err(Error::domain(
            "inverse_phi_coeff",
            format!("1/φ is not integrable for alpha = {} >= 1/2", spec.alpha),
        ));
    }
    if spec.f1.is_one() {
        return Ok(pure_fourier_coeff(-spec.alpha, n));
    }
    // 1/f₁ = (1/g₁)(1/conj g₁): coefficients are autocorrelations of the
    // geometrically decaying series of 1/g₁.
    let g = spectral_factor(&spec.f1, spec.f1.degree())?;
    let h = reciprocal_series(&g.values, 4096)?;
    let tail = h.iter().rposition(|v| v.abs() > 1e-18 * h[0].abs()).unwrap_or(0) + 1;
    let h = &h[..tail];
    let recip = |j: usize| -> f64 { h.iter().zip(&h[j.min(h.len())..]).map(|(a, b)| a * b).sum() };
    let mut acc = 0.0;
    for j in -(tail as i64)..=(tail as i64) {
        let r = recip(j.unsigned_abs() as usize);
        if r != 0.0 {
            acc += r * pure_fourier_coeff(-spec.alpha, n - j);
        }
    }
    Ok(acc)
}

/// Power-series coefficients `0..=upto` of `1/g` for the polynomial `g`.
fn reciprocal_series(g: &[f64], upto: usize) -> Result<Vec<f64>> {
    let g0 = g[0];
    if !(g0.abs() > 1e-300) {
        return Err(Error::Factorization("g1(0) vanishes".into()));
    }
    let mut h = Vec::with_capacity(upto + 1);
    h.push(1.0 / g0);
    for n in 1..=upto {
        let s: f64 = (1..=n.min(g.len() - 1)).map(|j| g[j] * h[n - j]).sum();
        h.push(-s / g0);
    }
    Ok(h)
}

/// `β_u` for `u = 0..=upto`: Taylor coefficients of `(1-χ)^{-α} / g₁`.
pub fn beta_coeffs(spec: &SymbolSpec, upto: usize) -> Result<CoeffTable> {
    let binom = gen_binom_neg_table(spec.alpha, upto)?;
    if spec.f1.is_one() {
        return Ok(CoeffTable::real(CoeffKind::BetaAlpha, binom));
    }
    let g = spectral_factor(&spec.f1, spec.f1.degree())?;
    let h = reciprocal_series(&g.values, upto)?;
    if h.iter().any(|v| !v.is_finite()) {
        return Err(Error::Factorization("1/g1 series diverges".into()));
    }
    let beta = (0..=upto)
        .map(|u| (0..=u).map(|j| binom[j] * h[u - j]).sum())
        .collect();
    Ok(CoeffTable::real(CoeffKind::BetaAlpha, beta))
}

/// Outer factor `g₁` of `f₁ = g₁ conj(g₁)` with `g₁(0) > 0`, by the
/// cepstral method: `g₁ = exp(½ c₀ + Σ_{n≥1} c_n zⁿ)` where `c_n` are the
/// Fourier coefficients of `log f₁`.
pub fn spectral_factor(f1: &TrigPoly, upto: usize) -> Result<CoeffTable> {
    let d = f1.degree();
    let m = (16 * (upto + 1)).max(64 * (d + 1)).max(256).next_power_of_two();
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(m);
    let inv = planner.plan_fft_inverse(m);

    let mut buf: Vec<Complex64> = Vec::with_capacity(m);
    for j in 0..m {
        let v = f1.eval(2.0 * PI * j as f64 / m as f64);
        if !(v > 0.0) {
            return Err(Error::domain("spectral_factor", "f1 is not strictly positive"));
        }
        buf.push(Complex64::new(v.ln(), 0.0));
    }
    fwd.process(&mut buf);
    let scale = 1.0 / m as f64;
    // analytic half of the cepstrum
    for (n, c) in buf.iter_mut().enumerate() {
        *c *= scale;
        if n == 0 {
            *c *= 0.5;
        } else if n >= m / 2 {
            *c = Complex64::new(0.0, 0.0);
        }
    }
    inv.process(&mut buf);
    for c in buf.iter_mut() {
        *c = c.exp();
    }
    fwd.process(&mut buf);
    let coeffs: Vec<Complex64> = buf.iter().take(upto + 1).map(|c| c * scale).collect();
    let values = coeffs.iter().map(|c| c.re).collect();
    let imag = if coeffs.iter().all(|c| c.im.abs() <= 1e-15 * coeffs[0].norm()) {
        None
    } else {
        Some(coeffs.iter().map(|c| c.im).collect())
    };
    Ok(CoeffTable { kind: CoeffKind::G1Coeffs, values, imag })
}
