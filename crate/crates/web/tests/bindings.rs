use std::f64::consts::PI;

use multicentric_web::{block_projection_json, lemniscate_json, model_roots_vec, sign_expansion_text};
use serde_json::Value;

#[test]
fn model_roots_are_interleaved_pairs() {
    let roots = model_roots_vec(4, PI / 70.0).unwrap();
    assert_eq!(roots.len(), 8);
    for pair in roots.chunks(2) {
        assert!((pair[0].hypot(pair[1]) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn lemniscate_of_model_quartic() {
    let roots = model_roots_vec(4, PI / 70.0).unwrap();
    let v: Value = serde_json::from_str(&lemniscate_json(&roots, 0.992, 1.5, 401).unwrap()).unwrap();
    assert_eq!(v["components"], 2);
    assert_eq!(v["separates_imaginary_axis"], true);
    assert!(v["svg"].as_str().unwrap().starts_with("<svg"));
    assert!((v["s"].as_f64().unwrap() - 0.2513).abs() < 0.01);
}

#[test]
fn sign_expansion_of_quadratic() {
    let text = sign_expansion_text(&[1.0, 0.0, -1.0, 0.0], 3, 2).unwrap();
    assert!(text.contains("f_1(w) = 1 - 0.5 w + 0.375 w^2 - 0.3125 w^3"), "{text}");
    assert!(text.contains("f_{2,1}(u)"), "{text}");
}

#[test]
fn block_projection_is_idempotent() {
    let v: Value = serde_json::from_str(&block_projection_json(0.5, 1.0, 10).unwrap()).unwrap();
    assert_eq!(v["n"], 16);
    assert!(v["idempotency"].as_f64().unwrap() < 1e-8);
    assert_eq!(v["projector"].as_array().unwrap().len(), 4);
    assert!(v["closed_form_error"].as_f64().unwrap() < 1e-12);
}

#[test]
fn bad_inputs_are_errors() {
    assert!(lemniscate_json(&[1.0], 0.5, 1.5, 101).is_err());
    assert!(sign_expansion_text(&[0.0, 1.0, 0.0, -1.0], 3, 1).is_err());
    assert!(lemniscate_json(&[1.0, 0.0, -1.0, 0.0], 2.0, 1.5, 101).is_err());
}
