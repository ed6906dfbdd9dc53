use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::components;
use super::grid::{Field, GridSpec};
use super::LemniscateAnalysis;
use crate::error::{Error, Result};
use crate::poly::{model_polynomial, MonicPolynomial, SeparationTask};

const AXIS_SAMPLES: usize = 20_001;
const SEGMENT_SAMPLES: usize = 2001;
/// Search interval and resolution for the largest admissible `eta`.
const ETA_MAX: f64 = 0.05;
const ETA_TOL: f64 = 1e-4;

/// Minimum of `|p(iy)|` over all real `y`.
///
/// Dense sampling on `|y| <= Y` (with `y = 0` as an exact node) followed by
/// golden-section refinement around every sampled local minimum. Beyond `Y`
/// the bound `|p(iy)| >= |y|^d - sum |a_j| |y|^j` keeps the value above `floor`.
fn imaginary_axis_minimum(p: &MonicPolynomial, floor: f64) -> f64 {
    let d = p.degree() as i32;
    let big = p.coeffs().iter().map(|c| c.norm()).fold(0.0, f64::max);
    let tail = |y: f64| {
        y.powi(d)
            - p.coeffs()
                .iter()
                .enumerate()
                .map(|(j, c)| c.norm() * y.powi(j as i32))
                .sum::<f64>()
    };
    let mut y_max = 1.0 + big + floor.max(0.0);
    while tail(y_max) <= floor {
        y_max *= 2.0;
    }
    let f = |y: f64| p.eval(Complex64::new(0.0, y)).norm();
    let half = AXIS_SAMPLES / 2;
    let h = y_max / half as f64;
    let ys: Vec<f64> = (0..AXIS_SAMPLES)
        .map(|k| (k as f64 - half as f64) * h)
        .collect();
    let vals: Vec<f64> = ys.iter().map(|&y| f(y)).collect();
    let mut best = vals.iter().copied().fold(f64::INFINITY, f64::min);
    for k in 1..AXIS_SAMPLES - 1 {
        if vals[k] <= vals[k - 1] && vals[k] <= vals[k + 1] {
            best = best.min(golden_min(&f, ys[k - 1], ys[k + 1]));
        }
    }
    best
}

fn golden_min<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..60 {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    f1.min(f2)
}

/// True iff `|p(iy)| > rho` for every real `y`.
pub fn separates_imaginary_axis(p: &MonicPolynomial, level: f64) -> bool {
    imaginary_axis_minimum(p, level) > level
}

/// True iff `|p(0)| > rho`.
pub fn avoids_origin(p: &MonicPolynomial, level: f64) -> bool {
    p.eval(Complex64::new(0.0, 0.0)).norm() > level
}

/// True iff both segments of `task` lie in `{|p| <= rho}` (2001 samples each).
pub fn segments_inside(p: &MonicPolynomial, level: f64, task: &SeparationTask) -> bool {
    task.sample_points(SEGMENT_SAMPLES)
        .iter()
        .all(|&z| p.eval(z).norm() <= level)
}

/// Outcome of the `eta` bisection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EtaSearch {
    pub eta: f64,
    pub level: f64,
    pub components: usize,
    pub separated: bool,
    pub steps: usize,
}

/// Largest `eta` in `(0, 0.05]` (to 1e-4) for which `V(p, 1 - eta)` has
/// exactly two components and avoids the imaginary axis, for the model
/// polynomial of degree `d`.
pub fn max_eta(d: usize, epsilon: f64, grid: GridSpec) -> Result<EtaSearch> {
    let p = model_polynomial(d, epsilon)?;
    let field = Field::sample(&p, grid);
    max_eta_on_field(&p, &field)
}

pub fn max_eta_on_field(p: &MonicPolynomial, field: &Field) -> Result<EtaSearch> {
    let axis_min = imaginary_axis_minimum(p, 1.0);
    let count = |eta: f64| -> Result<Option<usize>> {
        let level = 1.0 - eta;
        if field.check_level(level).is_err() {
            return Ok(None);
        }
        let lab = components::label(field, level);
        if lab.components.iter().any(|c| c.touches_boundary) {
            return Err(Error::BoxTooSmall);
        }
        Ok(Some(lab.components.len()))
    };
    let feasible = |eta: f64| -> Result<bool> {
        Ok(count(eta)? == Some(2) && axis_min > 1.0 - eta)
    };
    let mut steps = 0;
    if !feasible(ETA_TOL)? {
        return Err(Error::NoFeasibleLevel(format!(
            "eta = {ETA_TOL} does not give two separated components"
        )));
    }
    let (mut lo, mut hi) = (ETA_TOL, ETA_MAX);
    if feasible(hi)? {
        lo = hi;
    } else {
        while hi - lo > ETA_TOL {
            let mid = 0.5 * (lo + hi);
            steps += 1;
            if feasible(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    Ok(EtaSearch {
        eta: lo,
        level: 1.0 - lo,
        components: count(lo)?.unwrap_or(0),
        separated: axis_min > 1.0 - lo,
        steps,
    })
}

/// Height `a` and abscissa `b` of the highest point of the right component's
/// contour, and the angle `alpha = arctan(a/b)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RatioAngle {
    pub a: f64,
    pub b: f64,
    pub ratio: f64,
    pub alpha_rad: f64,
    pub alpha_deg: f64,
}

pub fn ratio_and_angle(p: &MonicPolynomial, level: f64, grid: GridSpec) -> Result<RatioAngle> {
    LemniscateAnalysis::build(p, level, grid)?.ratio_and_angle()
}

impl LemniscateAnalysis {
    /// See [`ratio_and_angle`]; the right component is the rightmost one
    /// lying strictly in `Re z > 0`.
    pub fn ratio_and_angle(&self) -> Result<RatioAngle> {
        let right = self
            .components()
            .iter()
            .enumerate()
            .filter(|(_, c)| c.bbox.x_min > 0.0)
            .max_by(|a, b| {
                (a.1.bbox.x_min + a.1.bbox.x_max)
                    .partial_cmp(&(b.1.bbox.x_min + b.1.bbox.x_max))
                    .unwrap()
            })
            .map(|(k, _)| k)
            .ok_or(Error::NoRightComponent)?;
        let mut top: Option<Complex64> = None;
        for (k, line) in self.contours().iter().enumerate() {
            if self.contour_component(k) != Some(right) {
                continue;
            }
            for &v in &line.points {
                if top.map(|t| v.im.abs() > t.im.abs()).unwrap_or(true) {
                    top = Some(v);
                }
            }
        }
        let top = top.ok_or(Error::NoRightComponent)?;
        let (a, b) = (top.im.abs(), top.re.abs());
        let alpha = a.atan2(b);
        Ok(RatioAngle {
            a,
            b,
            ratio: a / b,
            alpha_rad: alpha,
            alpha_deg: alpha.to_degrees(),
        })
    }
}
