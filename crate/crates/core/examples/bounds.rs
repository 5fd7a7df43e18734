//! Closed-form intervals for `c_α` and the large-α asymptotic.

use fhtoeplitz::bounds::{c_alpha_bounds, c_alpha_large, half_case_lower, integer_reference_bounds};

fn main() -> fhtoeplitz::Result<()> {
    for alpha in [0.25, 0.75, 1.5, 3.5] {
        let b = c_alpha_bounds(alpha)?;
        println!("alpha = {alpha}: [{:.4e}, {:.4e}] ({:?})", b.lower, b.upper, b.regime);
    }
    for alpha in [1, 2] {
        let b = integer_reference_bounds(alpha)?;
        println!("alpha = {alpha}: [{:.4}, {:.4}]", b.lower, b.upper);
    }
    println!("ln c_10 ~ {:.4}", c_alpha_large(10.0)?);
    println!("lambda_min(T_1000(|1-chi|)) >= {:.4e}", half_case_lower(1000)?);
    Ok(())
}
