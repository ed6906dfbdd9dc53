use std::f64::consts::PI;

use multicentric::lemniscate::{contours_csv, contours_svg};
use multicentric::projection::{
    block_example, oracle_projection_contour, oracle_projection_eigen, riesz_projection_auto,
    RieszOptions, DEFAULT_QUADRATURE_NODES,
};
use multicentric::{
    model_polynomial, Assignment, Complex64, DenseComplexMatrix, FoldedSeries, GridSpec,
    LemniscateAnalysis, MonicPolynomial, MulticentricSeries,
};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn quad() -> MonicPolynomial {
    let one = Complex64::new(1.0, 0.0);
    MonicPolynomial::from_roots(&[one, -one]).unwrap()
}

#[test]
fn model_quartic_report_has_two_components() {
    let p = model_polynomial(4, PI / 70.0).unwrap();
    let analysis = LemniscateAnalysis::build(&p, 0.992, GridSpec::square(1.5, 401).unwrap()).unwrap();
    let report = serde_json::to_value(analysis.report(Some(0.992)).unwrap()).unwrap();
    assert_eq!(report["components"].as_array().unwrap().len(), 2);
    assert!(report["s"].as_f64().unwrap() > 0.2);
    assert!(report["C"].as_f64().unwrap() > 100.0);
    let csv = contours_csv(analysis.contours());
    assert!(csv.starts_with("curve_id,x,y\n"));
    assert!(csv.lines().count() > 100);
    let svg = contours_svg(&analysis);
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn reports_are_deterministic() {
    let grid = GridSpec::square(1.5, 301).unwrap();
    let a = LemniscateAnalysis::build(&quad(), 0.99, grid).unwrap();
    let b = LemniscateAnalysis::build(&quad(), 0.99, grid).unwrap();
    assert_eq!(
        serde_json::to_string(&a.report(None).unwrap()).unwrap(),
        serde_json::to_string(&b.report(None).unwrap()).unwrap()
    );
    assert_eq!(contours_csv(a.contours()), contours_csv(b.contours()));
}

#[test]
fn projection_report_serializes_all_diagnostics() {
    let a = multicentric::projection::block_matrix(0.5, 1.0);
    let r = riesz_projection_auto(&quad(), &a, 8, &Assignment::sign(), &RieszOptions::default()).unwrap();
    let v: Value = serde_json::to_value(&r).unwrap();
    for key in ["n", "level", "order", "converged", "projector", "sign", "bound", "diagnostics", "power_trace"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["projector"]["n"], 4);
    assert_eq!(v["power_trace"].as_array().unwrap().len(), 5);
    let back: DenseComplexMatrix = serde_json::from_value(v["projector"].clone()).unwrap();
    assert!((&back - &r.projector).max_abs() < 1e-11);
}

#[test]
fn series_records_roundtrip() {
    let one = Complex64::new(1.0, 0.0);
    let jets = multicentric::JetSpec::constant(&[one, -one], 6).unwrap();
    let ms = multicentric::series::fj_interpolation(&quad(), &jets, 6).unwrap();
    let text = serde_json::to_string(&ms).unwrap();
    let back: MulticentricSeries = serde_json::from_str(&text).unwrap();
    assert_eq!(back.branches(), ms.branches());
    let folded: FoldedSeries = multicentric::fold::fold_multicentric(&ms, 2).unwrap();
    let v = serde_json::to_value(&folded).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["branches"].as_array().unwrap().len(), 2);
}

#[test]
fn eigen_and_contour_oracles_agree_on_normal_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let eig: Vec<Complex64> = (0..6)
            .map(|k| {
                let z = Complex64::new(1.0 + rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
                if k < 3 { z } else { -z }
            })
            .collect();
        let m = DMatrix::from_fn(6, 6, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let q = m.qr().q();
        let a = DenseComplexMatrix::from_dmatrix(&q * DMatrix::from_diagonal(&DVector::from_vec(eig)) * q.adjoint()).unwrap();
        let e = oracle_projection_eigen(&a, |z| z.re > 0.0).unwrap();
        let c = oracle_projection_contour(&a, Complex64::new(1.0, 0.0), 0.8, DEFAULT_QUADRATURE_NODES).unwrap();
        assert!((&e - &c).norm2() < 1e-8);
        assert!((e.trace() - 3.0).norm() < 1e-8);
    }
}

#[test]
fn first_power_below_one_grows_with_inverse_epsilon() {
    let mut previous = 0;
    for eps in [0.4_f64, 0.2, 0.1, 0.05] {
        let n = (1..5000)
            .find(|&n| block_example(eps.sqrt(), 1.0, n).unwrap().norm < 1.0)
            .unwrap();
        assert!(n as f64 > 1.0 / (2.0 * eps));
        assert!(n > previous);
        previous = n;
    }
}
