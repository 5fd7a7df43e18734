mod common;

use common::*;
use fhtoeplitz::toeplitz::{
    build_matrix, dense_inverse_oracle, gs_entry, inverse_trace, lambda_min, predictor_poly, GSInverse,
};
use nalgebra::SymmetricEigen;

#[test]
fn gs_matches_dense_on_grid() {
    let worst = gs_dense_worst();
    assert!(worst <= 1e-8, "{worst:e}");
}

#[test]
fn entries_are_symmetric() {
    let inv = GSInverse::new(&with_f1(0.75), 40).unwrap();
    for k in 0..=40 {
        for l in 0..=40 {
            assert_eq!(gs_entry(&inv, k, l).unwrap(), gs_entry(&inv, l, k).unwrap());
        }
    }
    assert!(gs_entry(&inv, 41, 0).is_err());
}

#[test]
fn edge_entries_are_lower_order() {
    let alpha = 0.75;
    let scaled: Vec<f64> = [256usize, 512, 1024, 2048]
        .iter()
        .map(|&n| {
            let inv = GSInverse::new(&pure(alpha), n).unwrap();
            gs_entry(&inv, 2, n / 2).unwrap().abs() * (n as f64).powf(1.0 - 2.0 * alpha)
        })
        .collect();
    assert!(scaled.windows(2).all(|w| w[1] < w[0]), "{scaled:?}");
}

#[test]
fn reflections_stay_inside_unit_interval() {
    for alpha in GS_GRID_ALPHAS {
        for spec in [pure(alpha), with_f1(alpha)] {
            let p = predictor_poly(&spec, 1024).unwrap();
            assert!(p.reflections.iter().all(|k| k.abs() < 1.0));
        }
    }
}

#[test]
fn lambda_min_matches_dense_eigensolver() {
    for spec in [pure(0.75), pure(1.6), with_f1(1.0)] {
        let n = 128;
        let dense = SymmetricEigen::new(build_matrix(&spec, n).unwrap().to_dense()).eigenvalues.min();
        let lam = lambda_min(&spec, n, 1e-14).unwrap();
        assert!(rel(lam, dense) < 1e-8, "{lam} vs {dense}");
    }
}

#[test]
fn trace_matches_dense_diagonal() {
    for spec in [pure(0.3), with_f1(1.6)] {
        let d = dense_inverse_oracle(&spec, 64).unwrap();
        assert!(rel(inverse_trace(&spec, 64).unwrap(), d.trace()) < 1e-12);
    }
    assert!((inverse_trace(&pure(0.0), 9).unwrap() - 10.0).abs() < 1e-14);
}
