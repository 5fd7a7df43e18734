#![allow(dead_code)]

use fhtoeplitz::asymptotics::{first_column_asymptotic, inverse_entry_asymptotic};
use fhtoeplitz::quadrature::{power_singular, GaussLegendre};
use fhtoeplitz::special::beta_fn;
use fhtoeplitz::toeplitz::{dense_inverse_oracle, gs_entry, GSInverse};
use fhtoeplitz::{SymbolSpec, TrigPoly};
use num_complex::Complex64;

pub fn pure(alpha: f64) -> SymbolSpec {
    SymbolSpec::pure(alpha).unwrap()
}

/// `φ_α` times `f₁ = 2.5 + χ + χ̄`.
pub fn with_f1(alpha: f64) -> SymbolSpec {
    let f1 = TrigPoly::new([1.0, 2.5, 1.0].iter().map(|&v| Complex64::new(v, 0.0)).collect()).unwrap();
    SymbolSpec::new(alpha, f1).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub const GS_GRID_ALPHAS: [f64; 5] = [0.3, 0.75, 1.0, 1.6, 2.5];
pub const GS_GRID_SIZES: [usize; 3] = [16, 64, 256];

/// Largest entrywise relative difference between the Gohberg–Semencul and
/// the Cholesky inverse over the α × f₁ × N grid.
pub fn gs_dense_worst() -> f64 {
    let mut worst: f64 = 0.0;
    for alpha in GS_GRID_ALPHAS {
        for spec in [pure(alpha), with_f1(alpha)] {
            for n in GS_GRID_SIZES {
                let dense = dense_inverse_oracle(&spec, n).unwrap();
                let gs = GSInverse::new(&spec, n).unwrap().to_dense();
                for (g, d) in gs.iter().zip(dense.iter()) {
                    worst = worst.max(rel(*g, *d));
                }
            }
        }
    }
    worst
}

/// Relative error of the bulk asymptotic for entry `([Nx], [Ny])`,
/// evaluated at the grid point `([Nx]/N, [Ny]/N)`.
pub fn entry_error(inv: &GSInverse, spec: &SymbolSpec, x: f64, y: f64) -> f64 {
    let n = inv.size() - 1;
    let (k, l) = ((n as f64 * x) as usize, (n as f64 * y) as usize);
    let exact = gs_entry(inv, k, l).unwrap();
    let a = inverse_entry_asymptotic(spec, k as f64 / n as f64, l as f64 / n as f64, n).unwrap().value;
    rel(a, exact)
}

/// Largest relative error of the first-column asymptotic over
/// `k/N ∈ [lo, hi]`.
pub fn first_column_error(spec: &SymbolSpec, n: usize, lo: f64, hi: f64) -> f64 {
    let col = GSInverse::new(spec, n).unwrap().column(0);
    let mut worst: f64 = 0.0;
    for (k, v) in col.iter().enumerate() {
        let x = k as f64 / n as f64;
        if x >= lo && x <= hi {
            let a = first_column_asymptotic(spec, x, n).unwrap().value;
            worst = worst.max(rel(a, *v));
        }
    }
    worst
}

/// `∫_0^1 |y-x|^{2α-1} |x-z|^{2α-1} dx`. The middle piece is the Beta
/// integral `d^{4α-1} B(2α, 2α)`; the outer pieces are integrated with the
/// endpoint singularity removed.
pub fn semigroup_integral(alpha: f64, y: f64, z: f64) -> f64 {
    let rule = GaussLegendre::new(16);
    let p = 2.0 * alpha - 1.0;
    let (lo, hi) = if y < z { (y, z) } else { (z, y) };
    let d = hi - lo;
    let middle = d.powf(2.0 * p + 1.0) * beta_fn(p + 1.0, p + 1.0).unwrap();
    let outer = |len: f64| power_singular(&rule, len, 1e-3 * d.min(len), p, |u| (u + d).powf(p));
    middle + outer(lo) + outer(1.0 - hi)
}
