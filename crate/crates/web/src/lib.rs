//! WebAssembly bindings behind the static demo page in `www/`.
//!
//! Every exported function has a plain Rust twin (the `*_json` / `*_text`
//! functions) so the logic can be tested natively; the `wasm_bindgen`
//! wrappers only convert errors into JavaScript exceptions.

use multicentric::fold::fold_multicentric;
use multicentric::format::{fmt_complex, fmt_g, fmt_series};
use multicentric::lemniscate::{contours_svg, separates_imaginary_axis};
use multicentric::projection::{block_example, block_matrix, riesz_projection_auto, RieszOptions};
use multicentric::series::fj_interpolation;
use multicentric::{
    model_polynomial, Assignment, Complex64, Error, GridSpec, JetSpec, LemniscateAnalysis,
    MonicPolynomial,
};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

fn from_interleaved(roots: &[f64]) -> Result<MonicPolynomial, Error> {
    if roots.is_empty() || !roots.len().is_multiple_of(2) {
        return Err(Error::InvalidParameter(
            "roots must be a non-empty list of re, im pairs".into(),
        ));
    }
    let roots: Vec<Complex64> = roots
        .chunks_exact(2)
        .map(|c| Complex64::new(c[0], c[1]))
        .collect();
    MonicPolynomial::from_roots(&roots)
}

/// Roots of the rotated model polynomial as interleaved `re, im` pairs.
pub fn model_roots_vec(degree: usize, epsilon: f64) -> Result<Vec<f64>, Error> {
    let p = model_polynomial(degree, epsilon)?;
    Ok(p.roots().iter().flat_map(|z| [z.re, z.im]).collect())
}

/// Sublevel set `{|p| <= level}` as an SVG picture plus its separation data.
pub fn lemniscate_json(
    roots: &[f64],
    level: f64,
    half_width: f64,
    resolution: usize,
) -> Result<String, Error> {
    let p = from_interleaved(roots)?;
    let analysis = LemniscateAnalysis::build(&p, level, GridSpec::square(half_width, resolution)?)?;
    let report = analysis.report(Some(level))?;
    Ok(json!({
        "svg": contours_svg(&analysis),
        "components": report.components.len(),
        "separates_imaginary_axis": separates_imaginary_axis(&p, level),
        "s": report.s,
        "sum_abs_delta": report.sum_abs_delta,
        "C": report.c,
    })
    .to_string())
}

/// Series of the sign function around each root, folded in `p^n` when `n > 1`.
pub fn sign_expansion_text(roots: &[f64], order: usize, n: usize) -> Result<String, Error> {
    let p = from_interleaved(roots)?;
    let values = p
        .roots()
        .iter()
        .map(|z| {
            if z.re == 0.0 {
                Err(Error::InvalidParameter(format!(
                    "center {} lies on the imaginary axis",
                    fmt_complex(*z)
                )))
            } else {
                Ok(Complex64::new(z.re.signum(), 0.0))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let ms = fj_interpolation(&p, &JetSpec::constant(&values, order)?, order)?;
    let mut lines = Vec::new();
    for (j, f) in ms.branches().iter().enumerate() {
        lines.push(format!("lambda_{} = {}", j + 1, fmt_complex(p.roots()[j])));
        lines.push(fmt_series(&format!("f_{}(w)", j + 1), "w", f));
    }
    if n > 1 {
        let folded = fold_multicentric(&ms, n)?;
        for j in 0..p.degree() {
            for k in 0..n {
                lines.push(fmt_series(&format!("f_{{{},{}}}(u)", j + 1, k), "u", folded.part(j, k)));
            }
        }
    }
    Ok(lines.join("\n"))
}

/// Right-half-plane projection of the 4x4 block matrix with the power `n`
/// chosen by repeated squaring.
pub fn block_projection_json(alpha: f64, gamma: f64, max_doublings: usize) -> Result<String, Error> {
    let one = Complex64::new(1.0, 0.0);
    let p = MonicPolynomial::from_roots(&[one, -one])?;
    let a = block_matrix(alpha, gamma);
    let report = riesz_projection_auto(&p, &a, max_doublings, &Assignment::right_projector(), &RieszOptions::default())?;
    let check = block_example(alpha, gamma, report.n)?;
    let projector: Vec<Vec<String>> = (0..a.n())
        .map(|i| (0..a.n()).map(|j| fmt_complex(report.projector.get(i, j))).collect())
        .collect();
    let trace: Vec<_> = report
        .power_trace
        .iter()
        .map(|s| json!({ "n": s.n, "norm": fmt_g(s.norm), "separates": s.separates_axis, "components": s.components }))
        .collect();
    Ok(json!({
        "n": report.n,
        "level": report.level,
        "order": report.order,
        "converged": report.converged,
        "projector": projector,
        "idempotency": report.diagnostics.idempotency,
        "commutator": report.diagnostics.commutator,
        "trace": fmt_complex(report.diagnostics.trace),
        "phi_norm": report.phi_norm,
        "bound": report.bound,
        "power_trace": trace,
        "closed_form_error": check.closed_form_error,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn model_roots(degree: usize, epsilon: f64) -> Result<Vec<f64>, JsError> {
    model_roots_vec(degree, epsilon).map_err(js)
}

#[wasm_bindgen]
pub fn lemniscate(roots: &[f64], level: f64, half_width: f64, resolution: usize) -> Result<String, JsError> {
    lemniscate_json(roots, level, half_width, resolution).map_err(js)
}

#[wasm_bindgen]
pub fn sign_expansion(roots: &[f64], order: usize, n: usize) -> Result<String, JsError> {
    sign_expansion_text(roots, order, n).map_err(js)
}

#[wasm_bindgen]
pub fn block_projection(alpha: f64, gamma: f64, max_doublings: usize) -> Result<String, JsError> {
    block_projection_json(alpha, gamma, max_doublings).map_err(js)
}
