//! Spectral radius of the kernel operator under Nyström refinement.

use fhtoeplitz::spectral::{nystrom, spectral_radius, POWER_TOL};

fn main() -> fhtoeplitz::Result<()> {
    let alpha = 1.5;
    for m in [32, 64, 128, 256] {
        let op = nystrom(alpha, m)?;
        let rho = spectral_radius(&op, POWER_TOL)?;
        println!("m = {m:3}: rho = {rho:.12e}");
    }
    Ok(())
}
