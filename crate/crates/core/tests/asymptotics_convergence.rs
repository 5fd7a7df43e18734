mod common;

use common::*;
use fhtoeplitz::asymptotics::{
    edge_asymptotics, inverse_entry_asymptotic, kernel_h, predictor_at_one, trace_asymptotic,
};
use fhtoeplitz::symbols::inverse_phi_coeff;
use fhtoeplitz::special::gamma;
use fhtoeplitz::toeplitz::{gs_entry, inverse_trace, predictor_poly, GSInverse};

#[test]
fn bulk_entries_converge_at_first_order() {
    for alpha in [0.75, 1.5, 2.5] {
        let spec = pure(alpha);
        let errs: Vec<f64> = [256usize, 512, 1024, 2048]
            .iter()
            .map(|&n| entry_error(&GSInverse::new(&spec, n).unwrap(), &spec, 0.4, 0.7))
            .collect();
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!(ratio > 1.8 && ratio < 2.2, "alpha {alpha}: {errs:?}");
        }
    }
}

#[test]
fn f1_enters_through_its_value_at_one() {
    let spec = with_f1(1.0);
    let n = 1000;
    let inv = GSInverse::new(&spec, n).unwrap();
    let exact = gs_entry(&inv, 300, 600).unwrap();
    let a = inverse_entry_asymptotic(&spec, 0.3, 0.6, n).unwrap().value;
    assert!(rel(a, exact) < 0.02, "{a} vs {exact}");
}

#[test]
fn trace_with_f1() {
    let spec = with_f1(1.5);
    let n = 1024;
    let e = rel(trace_asymptotic(&spec, n).unwrap().value, inverse_trace(&spec, n).unwrap());
    assert!(e < 0.05, "{e}");
}

#[test]
fn edge_formulas() {
    let spec = pure(0.25);
    let n = 4096;
    let inv = GSInverse::new(&spec, n).unwrap();
    for k in [0usize, 1, 3, 8] {
        let (near, far) = edge_asymptotics(&spec, k, n).unwrap();
        assert!(rel(near, gs_entry(&inv, k, 0).unwrap()) < 1e-4, "k {k}");
        assert!(rel(far, gs_entry(&inv, n - k, 0).unwrap()) < 5e-3, "k {k}");
    }
    let (_, far_small) = edge_asymptotics(&spec, 3, 2 * n).unwrap();
    let (_, far_big) = edge_asymptotics(&spec, 3, n).unwrap();
    assert!((far_big / far_small - 2.0).abs() < 1e-12);
}

#[test]
fn predictor_values_at_one() {
    for alpha in [0.75, 1.0, 1.5] {
        let n = 1024;
        let p = predictor_poly(&pure(alpha), n).unwrap();
        let (p1, dp1) = predictor_at_one(&pure(alpha), n).unwrap();
        assert!(rel(p.value_at_one(), p1) < 0.05, "alpha {alpha}");
        assert!(rel(p.derivative_at_one(), dp1) < 0.05, "alpha {alpha}");
    }
}

#[test]
fn h_kernel_tracks_corrected_entries() {
    // (T_N⁻¹ - T_N(1/φ))_{k,l} N^{1-2α} Γ²(α) f₁(1) → h_α(x, y)
    let alpha = 0.25;
    let spec = pure(alpha);
    let h = kernel_h(alpha, 0.3, 0.6).unwrap();
    let g2 = gamma(alpha).unwrap().powi(2);
    let errs: Vec<f64> = [512usize, 1024, 2048, 4096]
        .iter()
        .map(|&n| {
            let (k, l) = (3 * n / 10, 6 * n / 10);
            let inv = GSInverse::new(&spec, n).unwrap();
            let corr = gs_entry(&inv, k, l).unwrap() - inverse_phi_coeff(&spec, (l - k) as i64).unwrap();
            rel(corr * (n as f64).powf(1.0 - 2.0 * alpha) * g2, h)
        })
        .collect();
    assert!(errs[3] < 0.15, "{errs:?}");
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}
