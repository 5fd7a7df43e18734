//! Fourier coefficients of the symbol and of its spectral factor.

use fhtoeplitz::symbols::{beta_coeffs, phi_fourier_coeff};
use fhtoeplitz::SymbolSpec;

fn main() -> fhtoeplitz::Result<()> {
    let spec = SymbolSpec::pure(0.75)?;
    println!(" n   phi_hat(n)");
    for n in 0..=6 {
        println!("{n:2}   {:+.12e}", phi_fourier_coeff(&spec, n)?);
    }

    let beta = beta_coeffs(&spec, 6)?;
    println!("\nbeta_alpha: {:?}", beta.values);
    Ok(())
}
