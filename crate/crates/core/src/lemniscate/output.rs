use std::fmt::Write;

use serde::Serialize;

use super::components::Component;
use super::contour::Polyline;
use super::LemniscateAnalysis;
use crate::format::fmt_g;

/// JSON summary of one analysis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    #[serde(with = "crate::format::rounded")]
    pub level: f64,
    pub components: Vec<Component>,
    #[serde(with = "crate::format::rounded_opt")]
    pub s: Option<f64>,
    #[serde(rename = "L", with = "crate::format::rounded")]
    pub l: f64,
    #[serde(with = "crate::format::rounded_opt")]
    pub sum_abs_delta: Option<f64>,
    #[serde(rename = "C", with = "crate::format::rounded_opt")]
    pub c: Option<f64>,
}

/// `curve_id,x,y` rows, one per vertex.
pub fn contours_csv(contours: &[Polyline]) -> String {
    let mut out = String::from("curve_id,x,y\n");
    for (id, line) in contours.iter().enumerate() {
        for v in &line.points {
            let _ = writeln!(out, "{id},{},{}", fmt_g(v.re), fmt_g(v.im));
        }
    }
    out
}

/// Static SVG of the contours with roots (filled dots) and critical points
/// (hollow squares).
pub fn contours_svg(analysis: &LemniscateAnalysis) -> String {
    const SIZE: f64 = 800.0;
    let g = analysis.grid();
    let sx = SIZE / (g.x_max - g.x_min);
    let sy = SIZE / (g.y_max - g.y_min);
    let px = |x: f64| (x - g.x_min) * sx;
    let py = |y: f64| (g.y_max - y) * sy;
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (ax, ay) = (px(0.0), py(0.0));
    let _ = writeln!(
        out,
        r##"<g stroke="#bbbbbb" stroke-width="1"><line x1="{ax:.2}" y1="0" x2="{ax:.2}" y2="{SIZE}"/><line x1="0" y1="{ay:.2}" x2="{SIZE}" y2="{ay:.2}"/></g>"##
    );
    let _ = writeln!(out, r##"<g fill="none" stroke="#1f4e9c" stroke-width="1.5">"##);
    for line in analysis.contours() {
        let pts: Vec<String> = line
            .points
            .iter()
            .map(|v| format!("{:.2},{:.2}", px(v.re), py(v.im)))
            .collect();
        let tag = if line.closed { "polygon" } else { "polyline" };
        let _ = writeln!(out, r#"<{tag} points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r##"<g fill="#c0392b">"##);
    for r in analysis.polynomial().roots() {
        let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="4"/>"#, px(r.re), py(r.im));
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r##"<g fill="none" stroke="#27ae60" stroke-width="1.5">"##);
    for c in analysis.critical_points() {
        let _ = writeln!(
            out,
            r#"<rect x="{:.2}" y="{:.2}" width="8" height="8"/>"#,
            px(c.point.re) - 4.0,
            py(c.point.im) - 4.0
        );
    }
    let _ = writeln!(out, "</g>");
    out.push_str("</svg>\n");
    out
}
