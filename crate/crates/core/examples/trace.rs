//! `Tr T_N(φ_α)⁻¹` grows like `N^{2α}`; the constant is exact for integer α.

use fhtoeplitz::asymptotics::{trace_asymptotic, trace_constant_factorial};
use fhtoeplitz::toeplitz::inverse_trace;
use fhtoeplitz::SymbolSpec;

fn main() -> fhtoeplitz::Result<()> {
    for alpha in 1..=3u32 {
        let c = trace_constant_factorial(alpha)?;
        println!("alpha = {alpha}: constant {}/{}", c.num, c.den);
    }

    let spec = SymbolSpec::pure(1.25)?;
    for n in [250usize, 500, 1000] {
        let exact = inverse_trace(&spec, n)?;
        let asym = trace_asymptotic(&spec, n)?.value;
        println!("N = {n:4}: exact {exact:.6e}, leading term {asym:.6e}, ratio {:.5}", exact / asym);
    }
    Ok(())
}
