//! The limiting kernel `G_α(x, y)` on a grid, printed as CSV.

use fhtoeplitz::asymptotics::{kernel_g, kernel_g1};

fn main() -> fhtoeplitz::Result<()> {
    let alpha = 1.0;
    let m = 8;
    println!("x,y,g,closed_form");
    for i in 1..=m {
        for j in 1..=m {
            let (x, y) = (i as f64 / (m + 1) as f64, j as f64 / (m + 1) as f64);
            println!("{x:.4},{y:.4},{:.12e},{:.12e}", kernel_g(alpha, x, y)?, kernel_g1(x, y));
        }
    }
    Ok(())
}
