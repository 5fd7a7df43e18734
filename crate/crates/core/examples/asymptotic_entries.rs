//! Interior entries of `T_N(φ_α)⁻¹` against their leading-order kernel.

use fhtoeplitz::asymptotics::inverse_entry_asymptotic;
use fhtoeplitz::{GSInverse, SymbolSpec};

fn main() -> fhtoeplitz::Result<()> {
    let spec = SymbolSpec::pure(1.5)?;
    let (x, y) = (0.3, 0.6);
    println!("   N      exact           asymptotic      rel. error");
    for n in [128usize, 256, 512, 1024] {
        let inv = GSInverse::new(&spec, n)?;
        let (k, l) = ((x * n as f64) as usize, (y * n as f64) as usize);
        let exact = inv.column(l)[k];
        let (xk, yl) = (k as f64 / n as f64, l as f64 / n as f64);
        let asym = inverse_entry_asymptotic(&spec, xk, yl, n)?.value;
        println!("{n:5}  {exact:.8e}  {asym:.8e}  {:.2e}", ((exact - asym) / asym).abs());
    }
    Ok(())
}
