//! Closed-form asymptotics for `T_N(φ_α)⁻¹`: the first column, the bulk
//! kernel `G_α`, the trace, the edge entries, the `h_α` kernel for
//! `0 < α < 1/2`, and the predictor values at `1`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{graded_away, power_singular, GaussLegendre};
use crate::special::{beta_fn, gamma, log_gamma};
use crate::symbols::{beta_coeffs, SymbolSpec};

/// Relative position of the last geometric cell of the kernel quadratures.
const KERNEL_FLOOR: f64 = 1e-3;

pub(crate) fn rule() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(16))
}

/// Which asymptotic formula produced an [`AsymptoticEntry`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaId {
    FirstColumn,
    InverseEntry,
    Trace,
}

impl FormulaId {
    /// The power of `N` the formula carries, as a function of `α`.
    pub fn order(self, alpha: f64) -> f64 {
        match self {
            FormulaId::FirstColumn => alpha - 1.0,
            FormulaId::InverseEntry => 2.0 * alpha - 1.0,
            FormulaId::Trace => 2.0 * alpha,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticEntry {
    pub value: f64,
    /// Power of `N` in the leading term.
    pub order: f64,
    pub formula: FormulaId,
}

impl AsymptoticEntry {
    fn new(value: f64, alpha: f64, formula: FormulaId) -> Self {
        AsymptoticEntry { value, order: formula.order(alpha), formula }
    }
}

fn check_unit(func: &'static str, name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(func, format!("{name} = {v} must lie in (0, 1)")))
    }
}

fn check_above_half(func: &'static str, alpha: f64) -> Result<()> {
    if alpha > 0.5 {
        Ok(())
    } else {
        Err(Error::domain(func, format!("needs alpha > 1/2 (got {alpha})")))
    }
}

/// Leading term of `(T_N⁻¹)_{[Nx], 0}`:
/// `β₀ N^{α-1} x^{α-1}(1-x)^α / (Γ(α) g₁(1))`.
pub fn first_column_asymptotic(spec: &SymbolSpec, x: f64, n: usize) -> Result<AsymptoticEntry> {
    let alpha = spec.alpha;
    check_above_half("first_column_asymptotic", alpha)?;
    check_unit("first_column_asymptotic", "x", x)?;
    let v = spec.beta0()? * (n as f64).powf(alpha - 1.0) * x.powf(alpha - 1.0) * (1.0 - x).powf(alpha)
        / (gamma(alpha)? * spec.g1_at_one());
    Ok(AsymptoticEntry::new(v, alpha, FormulaId::FirstColumn))
}

/// `G_α(x, y) = (xy)^α ∫_{max}^1 (t-x)^{α-1}(t-y)^{α-1} t^{-2α} dt`.
///
/// With `u = t - max(x, y)` and `d = |x - y|` the integrand is
/// `u^{α-1} (u+d)^{α-1} (max+u)^{-2α}`; the power singularity at `u = 0`
/// (of order `2α-2` on the diagonal) is removed by substitution.
pub fn kernel_g(alpha: f64, x: f64, y: f64) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain("kernel_g", format!("alpha = {alpha} must be positive")));
    }
    if !(0.0..=1.0).contains(&x) || !(0.0..=1.0).contains(&y) {
        return Err(Error::domain("kernel_g", format!("({x}, {y}) outside [0, 1]²")));
    }
    let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
    let d = hi - lo;
    if d == 0.0 && alpha <= 0.5 {
        return Err(Error::domain(
            "kernel_g",
            format!("G_alpha diverges on the diagonal for alpha = {alpha} <= 1/2"),
        ));
    }
    let len = 1.0 - hi;
    if lo == 0.0 || len == 0.0 {
        return Ok(0.0);
    }
    let pref = (lo * hi).powf(alpha);
    let integral = if d == 0.0 {
        power_singular(rule(), len, len * KERNEL_FLOOR, 2.0 * alpha - 2.0, |u| {
            (hi + u).powf(-2.0 * alpha)
        })
    } else {
        power_singular(rule(), len, d.min(len) * KERNEL_FLOOR, alpha - 1.0, |u| {
            (u + d).powf(alpha - 1.0) * (hi + u).powf(-2.0 * alpha)
        })
    };
    Ok(pref * integral)
}

/// `G₁(x, y) = min(x, y)(1 - max(x, y))`, the Green's function of `-d²/dx²`.
pub fn kernel_g1(x: f64, y: f64) -> f64 {
    x.min(y) * (1.0 - x.max(y))
}

/// `∫_0^1 G_α(x, y) dy = Γ(α)²/Γ(2α+1) · x^α (1-x)^α`.
pub fn kernel_g_row_integral(alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain("kernel_g_row_integral", "alpha must be positive"));
    }
    let c = (2.0 * log_gamma(alpha)? - log_gamma(2.0 * alpha + 1.0)?).exp();
    Ok(c * (x * (1.0 - x)).powf(alpha))
}

/// Leading term of `(T_N⁻¹)_{[Nx],[Ny]}`: `N^{2α-1} G_α(x,y) / (Γ²(α) f₁(1))`.
pub fn inverse_entry_asymptotic(spec: &SymbolSpec, x: f64, y: f64, n: usize) -> Result<AsymptoticEntry> {
    let alpha = spec.alpha;
    check_above_half("inverse_entry_asymptotic", alpha)?;
    check_unit("inverse_entry_asymptotic", "x", x)?;
    check_unit("inverse_entry_asymptotic", "y", y)?;
    let g = kernel_g(alpha, x, y)?;
    let ln_scale = (2.0 * alpha - 1.0) * (n as f64).ln() - 2.0 * log_gamma(alpha)?;
    let v = g * ln_scale.exp() / spec.f1_at_one();
    Ok(AsymptoticEntry::new(v, alpha, FormulaId::InverseEntry))
}

/// `B(2α, 2α) / (Γ²(α)(2α - 1))`, the trace constant.
pub fn trace_constant(alpha: f64) -> Result<f64> {
    check_above_half("trace_constant", alpha)?;
    Ok(beta_fn(2.0 * alpha, 2.0 * alpha)? / (gamma(alpha)?.powi(2) * (2.0 * alpha - 1.0)))
}

/// Leading term of `Tr T_N⁻¹`: `N^{2α} B(2α,2α) / (Γ²(α)(2α-1) f₁(1))`.
pub fn trace_asymptotic(spec: &SymbolSpec, n: usize) -> Result<AsymptoticEntry> {
    let alpha = spec.alpha;
    let v = (n as f64).powf(2.0 * alpha) * trace_constant(alpha)? / spec.f1_at_one();
    Ok(AsymptoticEntry::new(v, alpha, FormulaId::Trace))
}

/// A reduced fraction of unsigned integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fraction {
    pub num: u128,
    pub den: u128,
}

impl Fraction {
    pub fn new(num: u128, den: u128) -> Self {
        let g = gcd(num, den).max(1);
        Fraction { num: num / g, den: den / g }
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

/// Largest integer `α` whose trace constants fit in `u128` arithmetic.
pub const TRACE_EXACT_MAX_ALPHA: u32 = 6;

fn check_exact_alpha(alpha: u32) -> Result<()> {
    if (1..=TRACE_EXACT_MAX_ALPHA).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::domain(
            "trace_constant",
            format!("exact form needs 1 <= alpha <= {TRACE_EXACT_MAX_ALPHA}"),
        ))
    }
}

/// Factorial form `(2α-1)!(2α-2)! / ((4α-1)! ((α-1)!)²)` for integer `α`.
pub fn trace_constant_factorial(alpha: u32) -> Result<Fraction> {
    check_exact_alpha(alpha)?;
    let num = factorial(2 * alpha - 1) * factorial(2 * alpha - 2);
    let den = factorial(4 * alpha - 1) * factorial(alpha - 1).pow(2);
    Ok(Fraction::new(num, den))
}

/// The Beta form evaluated exactly for integer `α`:
/// `B(2α,2α) = ((2α-1)!)²/(4α-1)!`, `Γ(α)² = ((α-1)!)²`.
pub fn trace_constant_beta_exact(alpha: u32) -> Result<Fraction> {
    check_exact_alpha(alpha)?;
    let b = Fraction::new(factorial(2 * alpha - 1).pow(2), factorial(4 * alpha - 1));
    let den = factorial(alpha - 1).pow(2) * (2 * alpha as u128 - 1);
    // divide in two steps to stay inside u128
    let g = gcd(b.num, den);
    Ok(Fraction::new(b.num / g, b.den * (den / g)))
}

/// Edge entries for `k ≪ N`:
/// `(T_N⁻¹)_{k,0} ≈ β₀(β_k^{(α)} - (α²/N) β_k^{(α+1)})` and
/// `(T_N⁻¹)_{N-k,0} ≈ β₀ (α/N) β_k^{(α+1)}` (the phase `g₁(1)/conj(g₁(1))`
/// is `1` for real `f₁`).
pub fn edge_asymptotics(spec: &SymbolSpec, k: usize, n: usize) -> Result<(f64, f64)> {
    let alpha = spec.alpha;
    let b0 = spec.beta0()?;
    let here = beta_coeffs(spec, k)?.values[k];
    let lifted = SymbolSpec::new(alpha + 1.0, spec.f1.clone())?;
    let up = beta_coeffs(&lifted, k)?.values[k];
    let nf = n as f64;
    Ok((b0 * (here - alpha * alpha / nf * up), b0 * alpha / nf * up))
}

/// `(P(1), P'(1))` for the degree-`N` predictor:
/// `N^α Γ(α+1)/(g₁(1)Γ(2α+1))` and `N^{α+1} Γ²(α+1)/(g₁(1)Γ(2α+2)Γ(α))`.
pub fn predictor_at_one(spec: &SymbolSpec, n: usize) -> Result<(f64, f64)> {
    let alpha = spec.alpha;
    let nf = n as f64;
    let g1 = spec.g1_at_one();
    let p1 = (alpha * nf.ln() + log_gamma(alpha + 1.0)? - log_gamma(2.0 * alpha + 1.0)?).exp() / g1;
    let dp1 = if alpha == 0.0 {
        0.0
    } else {
        let (ln_ga, sign) = crate::special::log_gamma_signed(alpha)
            .ok_or_else(|| Error::domain("predictor_at_one", "alpha is a pole of Gamma"))?;
        sign * ((alpha + 1.0) * nf.ln() + 2.0 * log_gamma(alpha + 1.0)?
            - log_gamma(2.0 * alpha + 2.0)?
            - ln_ga)
            .exp()
            / g1
    };
    Ok((p1, dp1))
}

/// The kernel `h_α(x, y)` for `0 < α < 1/2`, finite on the diagonal, with
/// `d = |x - y|`, `m = min(x, y)`, `w(t) = t^{α-1}(d+t)^{α-1}`:
///
/// `h_α = ∫_0^m w(t)((1-t)^α(1-d-t)^α - 1) dt - ∫_m^∞ w(t) dt
///        - ∫_{1-m}^1 t^{α-1}(1-t)^α (t-d)^{α-1}(1-t+d)^α dt`.
///
/// The first integral collects the bulk corrections `β(γ - β) + (γ - β)γ`
/// of the Gohberg–Semencul sum. Off the diagonal
/// `h_α = G_α - Γ(α)Γ(1-2α)/Γ(1-α) · d^{2α-1}`.
pub fn kernel_h(alpha: f64, x: f64, y: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(Error::domain("kernel_h", format!("needs 0 < alpha < 1/2 (got {alpha})")));
    }
    check_unit("kernel_h", "x", x)?;
    check_unit("kernel_h", "y", y)?;
    let (m, hi) = if x <= y { (x, y) } else { (y, x) };
    let d = hi - m;
    let r = rule();

    // ab - 1 = A + B + AB with A = a - 1, B = b - 1, kept accurate near t = 0
    let bracket = |t: f64| {
        let a = (alpha * (-t).ln_1p()).exp_m1();
        let b = (alpha * (-d - t).ln_1p()).exp_m1();
        a + b + a * b
    };
    let j1 = if d == 0.0 {
        power_singular(r, m, m * KERNEL_FLOOR, 2.0 * alpha - 1.0, |t| {
            if t == 0.0 {
                -2.0 * alpha
            } else {
                bracket(t) / t
            }
        })
    } else {
        power_singular(r, m, d.min(m) * KERNEL_FLOOR, alpha - 1.0, |t| {
            (d + t).powf(alpha - 1.0) * bracket(t)
        })
    };

    // I₁ on [m, 1], then t = 1/u on [1, ∞): ∫_0^1 u^{-2α}(1 + du)^{α-1} du
    let i1 = graded_away(r, m, 1.0, 0.0, |t| t.powf(alpha - 1.0) * (d + t).powf(alpha - 1.0))
        + power_singular(r, 1.0, KERNEL_FLOOR, -2.0 * alpha, |u| (1.0 + d * u).powf(alpha - 1.0));

    // I₅ with v = 1 - t on [0, m]
    let tail = |v: f64| (1.0 - v).powf(alpha - 1.0) * (1.0 - v - d).powf(alpha - 1.0);
    let half = 0.5 * m;
    let i5_left = if d == 0.0 {
        power_singular(r, half, half * KERNEL_FLOOR, 2.0 * alpha, tail)
    } else {
        power_singular(r, half, d.min(half) * KERNEL_FLOOR, alpha, |v| tail(v) * (v + d).powf(alpha))
    };
    let i5_right = graded_away(r, half, m, 1.0 - d, |v| v.powf(alpha) * (v + d).powf(alpha) * tail(v));

    Ok(j1 - i1 - (i5_left + i5_right))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::graded_from_zero;
    use approx::assert_relative_eq;

    #[test]
    fn kernel_g_examples() {
        assert_relative_eq!(kernel_g(1.0, 0.5, 0.5).unwrap(), 0.25, max_relative = 1e-12);
        assert_relative_eq!(kernel_g(1.0, 0.25, 0.5).unwrap(), 0.125, max_relative = 1e-12);
        assert_eq!(kernel_g(0.8, 0.3, 0.7).unwrap(), kernel_g(0.8, 0.7, 0.3).unwrap());
        assert!(kernel_g(0.4, 0.3, 0.3).is_err());
        assert!(kernel_g(0.5, 0.3, 0.3).is_err());
        assert_eq!(kernel_g(1.5, 0.0, 0.3).unwrap(), 0.0);
    }

    #[test]
    fn kernel_g_against_reference_values() {
        // adaptive high-precision quadrature of the defining integral
        let cases = [
            (0.75, 0.3, 0.6, 0.35364172122553702),
            (0.75, 0.4, 0.4, 0.97979589711327123),
            (2.5, 0.2, 0.9, 1.3659937798903702e-5),
            (0.25, 0.5, 0.5001, 520.41151083442396),
        ];
        for (a, x, y, want) in cases {
            let got = kernel_g(a, x, y).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-11);
        }
    }

    #[test]
    fn row_integral_matches_quadrature() {
        // geometric cells toward the diagonal cusp and toward both ends
        let g = GaussLegendre::new(16);
        let graded = |len: f64, f: &dyn Fn(f64) -> f64| graded_from_zero(&g, len, 1e-13, 0.2, f).0;
        for alpha in [0.75, 1.0, 2.0] {
            let x = 0.35;
            let row = |y: f64| kernel_g(alpha, x, y).unwrap();
            let (a, b) = (0.5 * x, 0.5 * (1.0 - x));
            let total = graded(a, &|u| row(x - u))
                + graded(a, &|u| row(u))
                + graded(b, &|u| row(x + u))
                + graded(b, &|u| row(1.0 - u));
            let want = kernel_g_row_integral(alpha, x).unwrap();
            assert_relative_eq!(total, want, max_relative = 1e-10);
        }
    }

    #[test]
    fn first_column_examples() {
        let s = SymbolSpec::pure(1.0).unwrap();
        let e = first_column_asymptotic(&s, 0.5, 100).unwrap();
        assert_relative_eq!(e.value, 0.5, max_relative = 1e-14);
        assert_eq!(e.order, 0.0);
        let near_one = first_column_asymptotic(&s, 1.0 - 1e-9, 100).unwrap().value;
        assert!(near_one < 1e-8);
        assert!(first_column_asymptotic(&s, 1.0, 100).is_err());
    }

    #[test]
    fn inverse_entry_examples() {
        let s = SymbolSpec::pure(1.0).unwrap();
        let e = inverse_entry_asymptotic(&s, 0.5, 0.5, 100).unwrap();
        assert_relative_eq!(e.value, 25.0, max_relative = 1e-12);
        assert_eq!(e.formula, FormulaId::InverseEntry);
        assert_eq!(e.order, 1.0);
    }

    #[test]
    fn trace_forms() {
        let s1 = SymbolSpec::pure(1.0).unwrap();
        assert_relative_eq!(trace_asymptotic(&s1, 10).unwrap().value, 100.0 / 6.0, max_relative = 1e-13);
        let s2 = SymbolSpec::pure(2.0).unwrap();
        assert_relative_eq!(trace_asymptotic(&s2, 10).unwrap().value, 1e4 / 420.0, max_relative = 1e-13);
        assert_eq!(trace_constant_factorial(2).unwrap(), Fraction { num: 1, den: 420 });
        for a in 1..=TRACE_EXACT_MAX_ALPHA {
            let f = trace_constant_factorial(a).unwrap();
            assert_eq!(f, trace_constant_beta_exact(a).unwrap());
            assert_relative_eq!(f.value(), trace_constant(a as f64).unwrap(), max_relative = 1e-12);
        }
        assert!(trace_asymptotic(&SymbolSpec::pure(0.5).unwrap(), 10).is_err());
    }

    #[test]
    fn edge_examples() {
        let s = SymbolSpec::pure(0.25).unwrap();
        let (i, ii) = edge_asymptotics(&s, 0, 1000).unwrap();
        assert_relative_eq!(i, 1.0 - 0.0625 / 1000.0, max_relative = 1e-14);
        let (_, ii2) = edge_asymptotics(&s, 0, 2000).unwrap();
        assert_relative_eq!(ii / ii2, 2.0, max_relative = 1e-14);
    }

    #[test]
    fn predictor_at_one_examples() {
        let (p, dp) = predictor_at_one(&SymbolSpec::pure(1.0).unwrap(), 1024).unwrap();
        assert_relative_eq!(p, 512.0, max_relative = 1e-12);
        assert_relative_eq!(dp / p, 1024.0 / 3.0, max_relative = 1e-12);
        let (p0, _) = predictor_at_one(&SymbolSpec::pure(0.0).unwrap(), 77).unwrap();
        assert_relative_eq!(p0, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn kernel_h_reference_values() {
        // adaptive high-precision quadrature of J₁ - I₁ - I₅
        let cases = [
            (0.25, 0.3, 0.6, -4.0606941221536844),
            (0.25, 0.4, 0.4, -4.0824829046386302),
            (0.1, 0.2, 0.9, -4.4865030765829937),
        ];
        for (a, x, y, want) in cases {
            let got = kernel_h(a, x, y).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-9);
            assert_eq!(got, kernel_h(a, y, x).unwrap());
        }
        assert!(kernel_h(0.5, 0.3, 0.6).is_err());
    }

    #[test]
    fn kernel_h_is_g_minus_symbol_inverse_term() {
        for alpha in [0.1, 0.25, 0.4] {
            let c = gamma(alpha).unwrap() * gamma(1.0 - 2.0 * alpha).unwrap() / gamma(1.0 - alpha).unwrap();
            for (x, y) in [(0.3, 0.6), (0.15, 0.5), (0.7, 0.72)] {
                let d: f64 = (y - x) as f64;
                let want = kernel_g(alpha, x, y).unwrap() - c * d.abs().powf(2.0 * alpha - 1.0);
                let got = kernel_h(alpha, x, y).unwrap();
                assert!((got - want).abs() < 1e-10 * want.abs(), "alpha {alpha} ({x},{y}): {got} vs {want}");
            }
        }
    }
}
