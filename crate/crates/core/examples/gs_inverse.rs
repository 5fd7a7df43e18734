//! Inverse of `T_N(φ_α)` from its predictor polynomial, checked against a
//! dense Cholesky inverse.

use fhtoeplitz::toeplitz::{build_matrix, dense_inverse_oracle};
use fhtoeplitz::{GSInverse, SymbolSpec};

fn main() -> fhtoeplitz::Result<()> {
    let spec = SymbolSpec::pure(1.6)?;
    let n = 64;
    let inv = GSInverse::new(&spec, n)?;
    let dense = dense_inverse_oracle(&spec, n)?;

    let gs = inv.to_dense();
    let worst = gs.iter().zip(dense.iter()).map(|(a, b)| ((a - b) / b).abs()).fold(0.0, f64::max);
    println!("N = {n}: max relative entry error {worst:.2e}");

    // T x = e_0 recovers the first column
    let t = build_matrix(&spec, n)?;
    let col = inv.column(0);
    let r = t.apply(&col);
    let resid = r.iter().enumerate().map(|(i, v)| (v - if i == 0 { 1.0 } else { 0.0 }).abs()).fold(0.0, f64::max);
    println!("residual of T (T^-1 e_0) - e_0: {resid:.2e}");
    println!("trace of the inverse: {:.10e}", inv.trace());
    Ok(())
}
