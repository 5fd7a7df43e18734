//! Closed-form bounds and asymptotics for `c_α`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{gamma, LogValue};

/// Bound values whose magnitude exceeds this are reported as logarithms.
pub const LOG_SPACE_THRESHOLD: f64 = 1e300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    SubHalf,
    HalfToOne,
    AboveOne,
    IntegerReference,
}

/// An interval `[lower, upper]` for `c_α`. When `log_space` is set both
/// ends are natural logarithms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub alpha: f64,
    pub lower: f64,
    pub upper: f64,
    pub regime: Regime,
    pub log_space: bool,
}

impl BoundsReport {
    fn from_logs(alpha: f64, lower: LogValue, upper: LogValue, regime: Regime) -> Self {
        let log_space = lower.ln_abs.max(upper.ln_abs) > LOG_SPACE_THRESHOLD.ln();
        let (lower, upper) = if log_space { (lower.ln_abs, upper.ln_abs) } else { (lower.value(), upper.value()) };
        BoundsReport { alpha, lower, upper, regime, log_space }
    }

    /// Whether `c` (a plain value, not a logarithm) lies in the interval.
    pub fn contains(&self, c: f64) -> bool {
        self.contains_ln(c.ln())
    }

    /// Whether `exp(ln_c)` lies in the interval, without leaving log space.
    pub fn contains_ln(&self, ln_c: f64) -> bool {
        if self.log_space {
            self.lower <= ln_c && ln_c <= self.upper
        } else {
            self.lower.ln() <= ln_c && ln_c <= self.upper.ln()
        }
    }
}

fn lg(x: f64) -> LogValue {
    LogValue::ln_gamma(x).expect("gamma argument is never a pole here")
}

fn lv(x: f64) -> LogValue {
    LogValue::from_f64(x)
}

/// `K_α = 1/(2α) + Γ²(2α)/Γ(4α) + Γ(1-2α)Γ(α)/Γ(1-α)` for `0 < α < 1/2`.
pub fn k_alpha(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::domain("k_alpha", format!("needs 0 < alpha < 1/2 (got {alpha})")));
    }
    Ok(1.0 / (2.0 * alpha)
        + gamma(2.0 * alpha)?.powi(2) / gamma(4.0 * alpha)?
        + gamma(1.0 - 2.0 * alpha)? * gamma(alpha)? / gamma(1.0 - alpha)?)
}

/// The interval for `c_α` in the regime that contains `α`.
///
/// The `α < 1/2` upper bound rests on a lower estimate of `G_α` that only
/// holds with the integral taken to infinity. It is below the computed
/// constant for `0.4013 < α < 1/2`.
///
/// `α = 1/2` and integer `α` are excluded: the first is covered by
/// [`half_case_lower`], the second by [`integer_reference_bounds`].
pub fn c_alpha_bounds(alpha: f64) -> Result<BoundsReport> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain("c_alpha_bounds", format!("alpha = {alpha} must be positive")));
    }
    if alpha == 0.5 {
        return Err(Error::Excluded(
            "no bounds on c_alpha at alpha = 1/2; use half_case_lower for lambda_min".into(),
        ));
    }
    if alpha.fract() == 0.0 {
        return Err(Error::Excluded(format!(
            "alpha = {alpha} is an integer; use integer_reference_bounds"
        )));
    }
    if alpha < 0.5 {
        let ratio = lg(1.0 - alpha).div(lg(1.0 - 2.0 * alpha));
        let lower = ratio.mul(lg(alpha)).div(lv(k_alpha(alpha)?));
        let upper = lg(alpha).mul(lv(4.0 * alpha + 1.0)).mul(ratio);
        Ok(BoundsReport::from_logs(alpha, lower, upper, Regime::SubHalf))
    } else if alpha < 1.0 {
        let g2 = lg(alpha).powi(2);
        let lower = lg(4.0 * alpha).mul(g2).mul(lv(2.0 * alpha - 1.0)).div(lg(2.0 * alpha).powi(2));
        let upper = g2
            .mul(lv((2.0 * alpha + 1.0) * (2.0 * alpha + 2.0) * (2.0 * alpha + 3.0) / 2.0));
        Ok(BoundsReport::from_logs(alpha, lower, upper, Regime::HalfToOne))
    } else {
        above_one_bounds(alpha)
    }
}

/// The `α > 1` interval, evaluated for any `α > 1` including integers.
pub fn above_one_bounds(alpha: f64) -> Result<BoundsReport> {
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(Error::domain("above_one_bounds", format!("needs alpha > 1 (got {alpha})")));
    }
    let g2 = lg(alpha).powi(2);
    let lower = g2.mul(lg(4.0 * alpha)).div(lg(2.0 * alpha - 1.0)).div(lg(2.0 * alpha + 1.0));
    let upper = g2.mul(lv((2.0 * alpha - 1.0) * (4.0 * alpha - 1.0) / 2.0)).mul(LogValue {
        ln_abs: (4.0 * alpha - 1.0) * 2f64.ln(),
        sign: 1.0,
    });
    Ok(BoundsReport::from_logs(alpha, lower, upper, Regime::AboveOne))
}

/// Reference interval for integer `α ≥ 1`: the `α > 1` lower bound and the
/// Böttcher–Widom upper bound `(4α+1)/(2α+1) · Γ(4α+1)Γ²(α+1)/Γ²(2α+1)`.
pub fn integer_reference_bounds(alpha: u32) -> Result<BoundsReport> {
    if alpha == 0 {
        return Err(Error::domain("integer_reference_bounds", "alpha must be at least 1"));
    }
    let a = alpha as f64;
    let lower = lg(a).powi(2).mul(lg(4.0 * a)).div(lg(2.0 * a - 1.0)).div(lg(2.0 * a + 1.0));
    let upper = lv((4.0 * a + 1.0) / (2.0 * a + 1.0))
        .mul(lg(4.0 * a + 1.0))
        .mul(lg(a + 1.0).powi(2))
        .div(lg(2.0 * a + 1.0).powi(2));
    Ok(BoundsReport::from_logs(a, lower, upper, Regime::IntegerReference))
}

/// `π/(N ln N)`, a lower bound for `λ_min(T_N(|1-χ|))`.
pub fn half_case_lower(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::domain("half_case_lower", format!("needs N >= 3 (got {n})")));
    }
    let n = n as f64;
    Ok(PI / (n * n.ln()))
}

/// `ln c_α` to leading order as `α → ∞`: `½ ln(8πα) + 2α(ln 4α - 1)`.
pub fn c_alpha_large(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain("c_alpha_large", format!("alpha = {alpha} must be positive")));
    }
    Ok(0.5 * (8.0 * PI * alpha).ln() + 2.0 * alpha * ((4.0 * alpha).ln() - 1.0))
}
