//! Raising the order of the zero by one: the predictor of `φ_α` gives the
//! first column of `T_N(φ_{α+1})⁻¹` in closed form.

use fhtoeplitz::recursion::lift_first_column;
use fhtoeplitz::toeplitz::predictor_poly;
use fhtoeplitz::{GSInverse, SymbolSpec};

fn main() -> fhtoeplitz::Result<()> {
    let (alpha, n) = (0.75, 256);
    let p = predictor_poly(&SymbolSpec::pure(alpha)?, n + 1)?;
    let lifted = lift_first_column(&p)?;
    let direct = GSInverse::new(&SymbolSpec::pure(alpha + 1.0)?, n)?.column(0);

    let worst = lifted.column.iter().zip(&direct).map(|(a, b)| ((a - b) / b).abs()).fold(0.0, f64::max);
    println!("A(P) = {:.6}, A(P)/N = {:.4}", lifted.aux.a_p, lifted.aux.a_p / n as f64);
    println!("max relative difference from Levinson: {worst:.2e}");
    Ok(())
}
