//! The constant `c_α` in `λ_min ~ c_α f₁(1) N^{-2α}`, once from the kernel
//! operator and once from Toeplitz eigenvalues.

use fhtoeplitz::spectral::{c_alpha_kernel, c_alpha_toeplitz, DEFAULT_RESOLUTIONS, DEFAULT_SIZES};
use fhtoeplitz::SymbolSpec;

fn main() -> fhtoeplitz::Result<()> {
    for alpha in [0.75, 1.0, 2.0] {
        let k = c_alpha_kernel(alpha, &DEFAULT_RESOLUTIONS)?;
        let t = c_alpha_toeplitz(&SymbolSpec::pure(alpha)?, &DEFAULT_SIZES)?;
        println!(
            "alpha = {alpha}: kernel {:.8} (+/- {:.1e}), toeplitz {:.8} (+/- {:.1e})",
            k.extrapolated, k.err_indicator, t.extrapolated, t.err_indicator
        );
    }
    println!("pi^2 = {:.8}", std::f64::consts::PI.powi(2));
    Ok(())
}
