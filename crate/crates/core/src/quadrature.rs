//! Gauss–Legendre rules and the graded integrators used for the singular
//! kernels.

use std::f64::consts::PI;

/// An `n`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes by Newton iteration on the Legendre three-term recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }

    /// `∫_a^b f`.
    pub fn integrate(&self, a: f64, b: f64, mut f: impl FnMut(f64) -> f64) -> f64 {
        let h = 0.5 * (b - a);
        let c = 0.5 * (b + a);
        self.nodes.iter().zip(&self.weights).map(|(x, w)| w * f(c + h * x)).sum::<f64>() * h
    }

    /// Nodes and weights mapped to `[0, 1]`.
    pub fn unit_interval(&self) -> (Vec<f64>, Vec<f64>) {
        let nodes = self.nodes.iter().map(|x| 0.5 * (x + 1.0)).collect();
        let weights = self.weights.iter().map(|w| 0.5 * w).collect();
        (nodes, weights)
    }
}

/// `(P_n(x), P_n'(x))`.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { 1.0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// `∫_0^L f` for `f` with an integrable singularity at `0`: cells
/// `[r^{j+1} L, r^j L]` down to `floor`, each with `rule`. Returns the
/// sum and the left edge of the last cell, so the caller can add the
/// remaining `[0, edge]` piece with a substitution of its own.
pub fn graded_from_zero(
    rule: &GaussLegendre,
    len: f64,
    floor: f64,
    ratio: f64,
    mut f: impl FnMut(f64) -> f64,
) -> (f64, f64) {
    let mut hi = len;
    let mut acc = 0.0;
    while hi > floor {
        let lo = hi * ratio;
        acc += rule.integrate(lo, hi, &mut f);
        hi = lo;
    }
    (acc, hi)
}

/// `∫_0^len u^p g(u) du` for `p > -1`, with `g` smooth on scales above
/// `floor`. Geometric cells cover `[floor', len]`; the last cell uses
/// `s = u^{p+1}`, which removes the power singularity.
pub fn power_singular(
    rule: &GaussLegendre,
    len: f64,
    floor: f64,
    p: f64,
    g: impl Fn(f64) -> f64,
) -> f64 {
    if len <= 0.0 {
        return 0.0;
    }
    let (graded, edge) = graded_from_zero(rule, len, floor, 0.2, |u| u.powf(p) * g(u));
    let q = p + 1.0;
    let last = rule.integrate(0.0, edge.powf(q), |s| g(s.powf(1.0 / q))) / q;
    graded + last
}

/// `∫_a^b f` where `f` is singular at `sing`, which lies outside `(a, b)`
/// and is not an endpoint. Cells grow geometrically away from `sing`.
pub fn graded_away(rule: &GaussLegendre, a: f64, b: f64, sing: f64, f: impl Fn(f64) -> f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (near, far, dir) = if sing >= b { (sing - b, sing - a, -1.0) } else { (a - sing, b - sing, 1.0) };
    debug_assert!(near > 0.0);
    let mut lo = near;
    let mut acc = 0.0;
    while lo < far {
        let hi = (lo * 5.0).min(far);
        acc += rule.integrate(lo, hi, |r| f(sing + dir * r));
        lo = hi;
    }
    acc
}

/// `∫_a^b f` by recursive bisection until two successive levels agree to `tol`.
pub fn adaptive(rule: &GaussLegendre, a: f64, b: f64, tol: f64, f: &impl Fn(f64) -> f64) -> f64 {
    fn rec(rule: &GaussLegendre, a: f64, b: f64, whole: f64, tol: f64, depth: u32, f: &impl Fn(f64) -> f64) -> f64 {
        let m = 0.5 * (a + b);
        let l = rule.integrate(a, m, f);
        let r = rule.integrate(m, b, f);
        if depth == 0 || (l + r - whole).abs() <= tol * (l + r).abs().max(1e-300) {
            l + r
        } else {
            rec(rule, a, m, l, tol, depth - 1, f) + rec(rule, m, b, r, tol, depth - 1, f)
        }
    }
    let whole = rule.integrate(a, b, f);
    rec(rule, a, b, whole, tol, 30, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials() {
        let g = GaussLegendre::new(8);
        assert!((g.weights.iter().sum::<f64>() - 2.0).abs() < 1e-14);
        let v = g.integrate(0.0, 1.0, |x| x.powi(15));
        assert!((v - 1.0 / 16.0).abs() < 1e-15);
        let (x, w) = GaussLegendre::new(64).unit_interval();
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-14);
        assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn graded_handles_endpoint_singularity() {
        let g = GaussLegendre::new(16);
        let (v, edge) = graded_from_zero(&g, 1.0, 1e-12, 0.2, |u| u.powf(-0.5));
        let rest = 2.0 * edge.sqrt();
        assert!((v + rest - 2.0).abs() < 1e-12);
    }

    #[test]
    fn power_singular_beta_integral() {
        // ∫_0^1 u^{-3/4} (1-u)^{1/2} du = B(1/4, 3/2), split at 1/2
        let g = GaussLegendre::new(16);
        let v = power_singular(&g, 0.5, 1e-4, -0.75, |u| (1.0 - u).sqrt())
            + power_singular(&g, 0.5, 1e-4, 0.5, |v| (1.0 - v).powf(-0.75));
        assert!((v - 3.49607673905616).abs() < 1e-13, "{v}");
        let e = power_singular(&g, 1.0, 1e-4, -0.75, |u| 1.0 + u);
        assert!((e - (4.0 + 4.0 / 5.0)).abs() < 1e-13, "{e}");
    }

    #[test]
    fn graded_away_near_singularity() {
        let g = GaussLegendre::new(16);
        // ∫_0^1 (1.001 - t)^{-1/2} dt
        let v = graded_away(&g, 0.0, 1.0, 1.001, |t| (1.001 - t).powf(-0.5));
        let want = 2.0 * (1.001f64.sqrt() - 0.001f64.sqrt());
        assert!((v - want).abs() < 1e-13);
    }

    #[test]
    fn adaptive_oscillatory() {
        let g = GaussLegendre::new(16);
        let v = adaptive(&g, 0.0, 10.0, 1e-13, &|x: f64| (x * x).sin());
        assert!((v - 0.5836708999296233).abs() < 1e-10);
    }
}
