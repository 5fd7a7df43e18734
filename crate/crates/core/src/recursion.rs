//! Lifting a predictor by one order of the zero at `χ = 1`: from the
//! degree-`N+1` predictor `P` of a symbol `h`, the first column of
//! `T_N(|1-χ|²/|P|²)⁻¹`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::dd::{dd, div, to_f64};
use crate::error::{Error, Result};
use crate::toeplitz::PredictorPoly;

/// The lifted column has denominator `N + LIFT_DENOMINATOR_OFFSET + A(P)`.
/// Offset 1 already fails on `P ≡ 1`, where the answer is the first column
/// of the inverse second-difference matrix.
pub const LIFT_DENOMINATOR_OFFSET: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LiftAux {
    /// `A(P) = -2 Re(conj(P'(1)) P(1)) / |P(1)|²`.
    pub a_p: f64,
    pub p1: Complex64,
    pub dp1: Complex64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LiftResult {
    /// Entries `0..=N`.
    pub column: Vec<f64>,
    pub aux: LiftAux,
}

/// First column of `T_N(|1-χ|²/|P|²)⁻¹` for `P = Σ_{u=0}^{N+1} β_u z^u`:
///
/// `β₀ S_k + β₀ A_{N,k} / (N + 2 + A(P))`, with `S_k = Σ_{u≤k} β_u` and
/// `A_{N,k} = Σ_{u=N+2-k}^{N+1} β_u (u-N-1+k) - Σ_{u=0}^{k} β_u (k-u+2) + S_k`.
///
/// When `P` is the predictor of `φ` this is the first column of
/// `T_N(|1-χ|² φ)⁻¹`.
pub fn lift_first_column(p: &PredictorPoly) -> Result<LiftResult> {
    let beta = p.gamma_dd();
    if beta.len() < 2 {
        return Err(Error::Invalid("the lift needs a predictor of degree at least 1".into()));
    }
    if !(beta[0].hi() > 0.0) {
        return Err(Error::Invalid("predictor must be normalized with beta_0 > 0".into()));
    }
    let n = beta.len() - 2;

    // prefix sums of β_u and u β_u
    let mut s = Vec::with_capacity(beta.len() + 1);
    let mut w = Vec::with_capacity(beta.len() + 1);
    s.push(dd(0.0));
    w.push(dd(0.0));
    for (u, &b) in beta.iter().enumerate() {
        s.push(s[u] + b);
        w.push(w[u] + b * u as f64);
    }
    let total = s[n + 2];
    let p1 = to_f64(total);
    if p1 == 0.0 || !p1.is_finite() {
        return Err(Error::SingularLift(p1));
    }
    let dp1 = w[n + 2];
    let a_p = div(dp1 * -2.0, total);
    let denom = a_p + (n + LIFT_DENOMINATOR_OFFSET) as f64;
    if to_f64(denom) == 0.0 {
        return Err(Error::SingularLift(p1));
    }

    let b0 = beta[0];
    let column = (0..=n)
        .map(|k| {
            let sk = s[k + 1];
            // Σ_{u=N+2-k}^{N+1} β_u (u - (N+1-k))
            let lo = n + 2 - k;
            let tail_b = total - s[lo];
            let tail_w = w[n + 2] - w[lo];
            let tail = tail_w - tail_b * (n + 1 - k) as f64;
            // Σ_{u=0}^{k} β_u (k + 2 - u)
            let head = sk * (k + 2) as f64 - w[k + 1];
            let a_nk: TwoFloat = tail - head + sk;
            to_f64(b0 * sk + div(b0 * a_nk, denom))
        })
        .collect();

    Ok(LiftResult {
        column,
        aux: LiftAux {
            a_p: to_f64(a_p),
            p1: Complex64::new(p1, 0.0),
            dp1: Complex64::new(to_f64(dp1), 0.0),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::SymbolSpec;
    use crate::toeplitz::{dense_inverse_oracle, predictor_poly, GSInverse};

    #[test]
    fn trivial_predictor_gives_second_difference_inverse() {
        let p = PredictorPoly::from_coeffs(vec![1.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        let r = lift_first_column(&p).unwrap();
        let want = [0.8, 0.6, 0.4, 0.2];
        for (a, b) in r.column.iter().zip(want) {
            assert!((a - b).abs() < 1e-15, "{:?}", r.column);
        }
        assert_eq!(r.aux.a_p, 0.0);
        // the other denominator reading misses already here
        assert!((1.0 - 1.0 / 4.0 - r.column[0]).abs() > 0.01);
    }

    #[test]
    fn lift_matches_dense_oracle() {
        for alpha in [0.0, 0.25, 0.75, 1.0] {
            for n in [3usize, 8, 16] {
                let p = predictor_poly(&SymbolSpec::pure(alpha).unwrap(), n + 1).unwrap();
                let lifted = lift_first_column(&p).unwrap().column;
                let dense = dense_inverse_oracle(&SymbolSpec::pure(alpha + 1.0).unwrap(), n).unwrap();
                for (k, v) in lifted.iter().enumerate() {
                    let d = dense[(k, 0)];
                    assert!(((v - d) / d).abs() < 1e-10, "alpha {alpha} N {n} k {k}: {v} vs {d}");
                }
            }
        }
    }

    #[test]
    fn lift_matches_levinson_at_size() {
        let n = 512;
        let p = predictor_poly(&SymbolSpec::pure(0.75).unwrap(), n + 1).unwrap();
        let lifted = lift_first_column(&p).unwrap().column;
        let direct = GSInverse::new(&SymbolSpec::pure(1.75).unwrap(), n).unwrap().column(0);
        for k in 0..=n {
            assert!(((lifted[k] - direct[k]) / direct[k]).abs() < 1e-8, "k {k}");
        }
        assert!(lifted[0] > 0.0);
    }

    #[test]
    fn a_of_p_scaling() {
        for alpha in [0.75, 1.5] {
            let n = 1024;
            let p = predictor_poly(&SymbolSpec::pure(alpha).unwrap(), n + 1).unwrap();
            let a = lift_first_column(&p).unwrap().aux.a_p;
            let want = -2.0 * alpha / (2.0 * alpha + 1.0);
            assert!((a / n as f64 / want - 1.0).abs() < 0.05, "{alpha}: {}", a / n as f64);
        }
    }

    #[test]
    fn singular_lift_reported() {
        let p = PredictorPoly::from_coeffs(vec![1.0, -1.0]).unwrap();
        assert!(matches!(lift_first_column(&p), Err(Error::SingularLift(_))));
    }
}
