//! Helpers on top of `twofloat`. Its `TwoFloat / TwoFloat` (and `recip`)
//! only return a double-precision quotient, so division goes through one
//! Newton correction built from the accurate product and difference.

use twofloat::TwoFloat;

pub(crate) fn dd(x: f64) -> TwoFloat {
    TwoFloat::from(x)
}

pub(crate) fn to_f64(x: TwoFloat) -> f64 {
    x.into()
}

/// `a / b` to double-double accuracy.
pub(crate) fn div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q0 = a.hi() / b.hi();
    let r = a - b * q0;
    let q1 = r.hi() / b.hi();
    let r2 = r - b * q1;
    TwoFloat::from(q0) + q1 + r2.hi() / b.hi()
}

pub(crate) fn recip(b: TwoFloat) -> TwoFloat {
    div(dd(1.0), b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_keeps_the_low_word() {
        let third = recip(dd(3.0));
        let back = third * 3.0 - dd(1.0);
        assert!(to_f64(back).abs() < 1e-31, "{back:?}");
        let a = dd(2.0).sqrt();
        let b = dd(7.0) / 3.0;
        let q = div(a, b);
        let err = q * b - a;
        assert!(to_f64(err).abs() < 1e-31, "{err:?}");
    }
}
