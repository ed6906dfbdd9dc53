//! Complex polynomials: the monic polynomial `p` of the calculus, its
//! Lagrange basis, critical points and the model families used for the
//! lemniscate separation experiments.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// Two roots closer than this are treated as a repeated root.
pub const SIMPLE_ROOT_TOL: f64 = 1e-9;
/// Roots of `p'` closer than this are merged into one multiple critical point.
pub const CRITICAL_CLUSTER_TOL: f64 = 1e-7;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Polynomial in coefficient form, `coeffs[k]` multiplying `z^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&ZERO) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(ZERO);
        }
        Poly { coeffs }
    }

    pub fn constant(c: Complex64) -> Self {
        Poly { coeffs: vec![c] }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() == 1 {
            return Poly::constant(ZERO);
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |p: &Poly, k: usize| p.coeffs.get(k).copied().unwrap_or(ZERO);
        Poly::new((0..n).map(|k| get(self, k) + get(other, k)).collect())
    }

    pub fn scale(&self, s: Complex64) -> Poly {
        Poly::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Coefficients of `q(t) = self(center + t)`, i.e. the Taylor coefficients at `center`.
    pub fn taylor_at(&self, center: Complex64) -> Vec<Complex64> {
        // Repeated synthetic division.
        let mut work = self.coeffs.clone();
        let n = work.len();
        for k in 0..n {
            for i in (k..n - 1).rev() {
                let next = work[i + 1];
                work[i] += center * next;
            }
        }
        work
    }

    /// All complex roots (companion-matrix eigenvalues polished by Newton steps).
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        find_roots(&self.coeffs)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.norm() == 0.0 && self.coeffs.len() > 1 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

/// Roots of `sum coeffs[k] z^k` via the eigenvalues of the companion matrix,
/// each polished with Newton's method on the original coefficients.
pub fn find_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let mut c = coeffs.to_vec();
    while c.len() > 1 && c.last().map(|z| z.norm() == 0.0).unwrap_or(false) {
        c.pop();
    }
    let degree = c.len().saturating_sub(1);
    if degree == 0 {
        return Ok(Vec::new());
    }
    if c.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("polynomial coefficients"));
    }
    let lead = c[degree];
    let monic: Vec<Complex64> = c.iter().map(|&z| z / lead).collect();
    if degree == 1 {
        return Ok(vec![-monic[0]]);
    }
    let mut companion = DMatrix::<Complex64>::zeros(degree, degree);
    for i in 1..degree {
        companion[(i, i - 1)] = ONE;
    }
    for i in 0..degree {
        companion[(i, degree - 1)] = -monic[i];
    }
    let p = Poly::new(monic);
    let mut roots = match linalg::eigenvalues(&companion) {
        Ok(r) => r,
        // QR iteration can stall on exactly nilpotent companions such as z^3.
        Err(_) => aberth(&p)?,
    };
    let dp = p.derivative();
    for r in roots.iter_mut() {
        *r = newton_polish(&p, &dp, *r);
    }
    Ok(roots)
}

/// Aberth-Ehrlich simultaneous iteration for a monic polynomial.
fn aberth(p: &Poly) -> Result<Vec<Complex64>> {
    let d = p.degree();
    let dp = p.derivative();
    let c = p.coeffs();
    let radius = 1.0 + c[..d].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(0.5 * radius, 2.0 * PI * (k as f64 + 0.25) / d as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut biggest: f64 = 0.0;
        for k in 0..d {
            let ratio = p.eval(z[k]) / dp.eval(z[k]);
            if !ratio.re.is_finite() || !ratio.im.is_finite() {
                continue;
            }
            let repulsion: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| ONE / (z[k] - z[j]))
                .sum();
            let step = ratio / (ONE - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[k] -= step;
                biggest = biggest.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if biggest < 1e-15 {
            return Ok(z);
        }
    }
    // Multiple roots converge only linearly; accept when residuals are tiny.
    let scale: f64 = c.iter().map(|c| c.norm()).sum();
    if z.iter().all(|&r| p.eval(r).norm() <= 1e-12 * scale) {
        Ok(z)
    } else {
        Err(Error::RootFinding("Aberth iteration did not converge".into()))
    }
}

fn newton_polish(p: &Poly, dp: &Poly, z0: Complex64) -> Complex64 {
    let mut z = z0;
    let mut best = (p.eval(z).norm(), z);
    for _ in 0..3 {
        let d = dp.eval(z);
        if d.norm() == 0.0 {
            break;
        }
        let step = p.eval(z) / d;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        z -= step;
        let r = p.eval(z).norm();
        if r < best.0 {
            best = (r, z);
        } else {
            break;
        }
    }
    best.1
}

/// A critical point of `p` (a root of `p'`) with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    #[serde(with = "crate::format::complex_pair")]
    pub point: Complex64,
    pub multiplicity: usize,
}

/// Monic polynomial held both as its root list and its expanded coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct MonicPolynomial {
    roots: Vec<Complex64>,
    /// `a_0..a_{d-1}`; the leading coefficient 1 is implicit.
    coeffs: Vec<Complex64>,
    min_root_distance: f64,
}

impl MonicPolynomial {
    /// Builds `prod (z - root)` by incremental multiplication.
    pub fn from_roots(roots: &[Complex64]) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::EmptyRoots);
        }
        if roots.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("roots"));
        }
        // full[k] multiplies z^k; starts as the constant 1.
        let mut full = vec![ONE];
        for &r in roots {
            full.push(ZERO);
            for k in (1..full.len()).rev() {
                let prev = full[k - 1];
                full[k] = prev - r * full[k];
            }
            full[0] = -r * full[0];
        }
        let d = roots.len();
        let ascending = full;
        let mut min_root_distance = f64::INFINITY;
        for i in 0..d {
            for j in (i + 1)..d {
                min_root_distance = min_root_distance.min((roots[i] - roots[j]).norm());
            }
        }
        Ok(MonicPolynomial {
            roots: roots.to_vec(),
            coeffs: ascending[..d].to_vec(),
            min_root_distance,
        })
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    /// Lower coefficients `a_0..a_{d-1}` (the polynomial is `z^d + sum a_k z^k`).
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Full ascending coefficient vector including the leading 1.
    pub fn full_coeffs(&self) -> Vec<Complex64> {
        let mut c = self.coeffs.clone();
        c.push(ONE);
        c
    }

    pub fn as_poly(&self) -> Poly {
        Poly::new(self.full_coeffs())
    }

    pub fn has_simple_roots(&self) -> bool {
        self.min_root_distance > SIMPLE_ROOT_TOL
    }

    pub fn min_root_distance(&self) -> f64 {
        self.min_root_distance
    }

    pub(crate) fn require_simple(&self) -> Result<()> {
        if self.has_simple_roots() {
            Ok(())
        } else {
            Err(Error::RepeatedRoots {
                min_distance: self.min_root_distance,
            })
        }
    }

    /// Horner evaluation on the coefficient form.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ONE, |acc, &c| acc * z + c)
    }

    /// Product-form evaluation, used as a cross-check of [`Self::eval`].
    pub fn eval_product(&self, z: Complex64) -> Complex64 {
        self.roots.iter().fold(ONE, |acc, &r| acc * (z - r))
    }

    pub fn derivative(&self) -> Poly {
        self.as_poly().derivative()
    }

    /// `p'(z)` evaluated directly.
    pub fn eval_derivative(&self, z: Complex64) -> Complex64 {
        let d = self.degree();
        let mut acc = Complex64::new(d as f64, 0.0);
        for k in (1..d).rev() {
            acc = acc * z + self.coeffs[k] * k as f64;
        }
        acc
    }

    /// `p'(lambda_k) = prod_{j != k} (lambda_k - lambda_j)`.
    pub fn derivative_at_root(&self, k: usize) -> Complex64 {
        let lk = self.roots[k];
        self.roots
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .fold(ONE, |acc, (_, &lj)| acc * (lk - lj))
    }

    /// Roots of `p'` with multiplicities, clustered at [`CRITICAL_CLUSTER_TOL`].
    ///
    /// Every returned point is checked against the convex hull of the roots.
    pub fn critical_points(&self) -> Result<Vec<CriticalPoint>> {
        let d = self.degree();
        if d < 2 {
            return Err(Error::DegreeTooSmall {
                degree: d,
                required: 2,
            });
        }
        let dp = self.derivative();
        let raw = dp.roots()?;
        // Eigenvalues of a multiple root spread like eps^(1/m), well beyond the
        // clustering tolerance, so loose groups are accepted when their mean
        // is confirmed as a root of the right multiplicity.
        let mut clusters: Vec<(Complex64, usize)> = Vec::new();
        for group in single_link(&raw, 1e-4) {
            let pts: Vec<Complex64> = group.iter().map(|&k| raw[k]).collect();
            let mean = pts.iter().sum::<Complex64>() / pts.len() as f64;
            if pts.len() > 1 && is_root_of_multiplicity(&dp, mean, pts.len()) {
                clusters.push((mean, pts.len()));
                continue;
            }
            for sub in single_link(&pts, CRITICAL_CLUSTER_TOL) {
                let m = sub.iter().map(|&k| pts[k]).sum::<Complex64>() / sub.len() as f64;
                clusters.push((m, sub.len()));
            }
        }
        let hull = convex_hull(&self.roots);
        for &(z, _) in &clusters {
            let dist = distance_to_hull(&hull, z);
            if dist > CRITICAL_CLUSTER_TOL {
                return Err(Error::RootFinding(format!(
                    "critical point {z} lies {dist:e} outside the root convex hull"
                )));
            }
        }
        clusters.sort_by(|a, b| {
            a.0.re
                .partial_cmp(&b.0.re)
                .unwrap()
                .then(a.0.im.partial_cmp(&b.0.im).unwrap())
        });
        Ok(clusters
            .into_iter()
            .map(|(point, multiplicity)| CriticalPoint {
                point,
                multiplicity,
            })
            .collect())
    }

    /// Lagrange basis polynomial `delta_k` (0-based `k`) of degree `d-1`.
    pub fn lagrange_basis(&self, k: usize) -> Result<Poly> {
        let d = self.degree();
        if k >= d {
            return Err(Error::IndexOutOfRange { index: k, degree: d });
        }
        self.require_simple()?;
        let mut acc = Poly::constant(ONE);
        for (j, &lj) in self.roots.iter().enumerate() {
            if j != k {
                acc = acc.mul(&Poly::new(vec![-lj, ONE]));
            }
        }
        Ok(acc.scale(ONE / self.derivative_at_root(k)))
    }

    /// All `d` Lagrange basis polynomials.
    pub fn lagrange_basis_all(&self) -> Result<Vec<Poly>> {
        (0..self.degree()).map(|k| self.lagrange_basis(k)).collect()
    }

    /// `sum_j |delta_j(z)|`.
    pub fn lagrange_abs_sum(&self, z: Complex64) -> Result<f64> {
        Ok(self
            .lagrange_basis_all()?
            .iter()
            .map(|b| b.eval(z).norm())
            .sum())
    }

    pub fn record(&self) -> PolynomialRecord {
        PolynomialRecord {
            degree: self.degree(),
            roots: self.roots.clone(),
            coeffs: self.coeffs.clone(),
        }
    }
}

impl fmt::Display for MonicPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z^{}", self.degree())?;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.norm() < 1e-15 {
                continue;
            }
            match k {
                0 => write!(f, " + ({c})")?,
                1 => write!(f, " + ({c})z")?,
                _ => write!(f, " + ({c})z^{k}")?,
            }
        }
        Ok(())
    }
}

/// JSON form: `{"degree": d, "roots": [[re,im],...], "coeffs": [[re,im],...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub degree: usize,
    #[serde(with = "crate::format::complex_vec")]
    pub roots: Vec<Complex64>,
    #[serde(with = "crate::format::complex_vec")]
    pub coeffs: Vec<Complex64>,
}

impl TryFrom<PolynomialRecord> for MonicPolynomial {
    type Error = Error;

    fn try_from(rec: PolynomialRecord) -> Result<Self> {
        if rec.roots.len() != rec.degree {
            return Err(Error::Parse(format!(
                "degree {} but {} roots",
                rec.degree,
                rec.roots.len()
            )));
        }
        MonicPolynomial::from_roots(&rec.roots)
    }
}

/// Model polynomial of even degree `d`: the roots of `z^d - 1`, rotated by
/// `pi/d` when a root sits on the imaginary axis, with the four roots
/// nearest the imaginary axis moved by `epsilon` along the unit circle
/// toward the real axis.
pub fn model_polynomial(d: usize, epsilon: f64) -> Result<MonicPolynomial> {
    if d < 2 || d % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "model family needs an even degree >= 2, got {d}"
        )));
    }
    if !(0.0..PI / (2.0 * d as f64)).contains(&epsilon) {
        return Err(Error::InvalidParameter(format!(
            "epsilon {epsilon} outside [0, pi/(2d))"
        )));
    }
    MonicPolynomial::from_roots(&model_root_angles(d, epsilon).iter().map(|&a| Complex64::from_polar(1.0, a)).collect::<Vec<_>>())
}

/// Root angles of [`model_polynomial`], in `[0, 2pi)` before perturbation.
pub fn model_root_angles(d: usize, epsilon: f64) -> Vec<f64> {
    let rotate = d.is_multiple_of(4);
    let mut angles: Vec<f64> = (0..d)
        .map(|k| {
            let base = 2.0 * PI * k as f64 / d as f64;
            if rotate {
                base + PI / d as f64
            } else {
                base
            }
        })
        .collect();
    if d == 2 {
        return angles;
    }
    // Distance of e^{i a} to the imaginary axis is |cos a|; the four nearest
    // form two conjugate pairs, one pair on each side of the axis.
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&i, &j| {
        angles[i]
            .cos()
            .abs()
            .partial_cmp(&angles[j].cos().abs())
            .unwrap()
            .then(i.cmp(&j))
    });
    for &i in order.iter().take(4) {
        // Toward the real axis: decrease |angle to the nearest real direction|.
        let a = angles[i];
        let in_first_or_third = a.cos() * a.sin() > 0.0;
        angles[i] = if in_first_or_third { a - epsilon } else { a + epsilon };
    }
    angles
}

/// The cubic example: `z^3 - 1` with the complex pair moved away from the
/// real root, `(z - e^{i(2pi/3+eps)})(z - e^{-i(2pi/3+eps)})(z - 1)`.
pub fn cubic_fixture(epsilon: f64) -> Result<MonicPolynomial> {
    let a = 2.0 * PI / 3.0 + epsilon;
    MonicPolynomial::from_roots(&[
        Complex64::from_polar(1.0, a),
        Complex64::from_polar(1.0, -a),
        ONE,
    ])
}

/// Two vertical segments `{±1 + iy : |y| <= tan(alpha)}` that a lemniscate
/// should enclose while avoiding the imaginary axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeparationTask {
    pub x_offset: f64,
    pub half_gap_angle: f64,
}

impl SeparationTask {
    pub fn new(half_gap_angle: f64) -> Result<Self> {
        if !(0.0..PI / 2.0).contains(&half_gap_angle) {
            return Err(Error::InvalidParameter(format!(
                "alpha {half_gap_angle} outside [0, pi/2)"
            )));
        }
        Ok(SeparationTask {
            x_offset: 1.0,
            half_gap_angle,
        })
    }

    pub fn half_height(&self) -> f64 {
        self.half_gap_angle.tan()
    }

    /// `samples` evenly spaced points on each of the two segments.
    pub fn sample_points(&self, samples: usize) -> Vec<Complex64> {
        let h = self.half_height();
        let n = samples.max(2);
        let mut pts = Vec::with_capacity(2 * n);
        for &x in &[self.x_offset, -self.x_offset] {
            for i in 0..n {
                let y = -h + 2.0 * h * i as f64 / (n - 1) as f64;
                pts.push(Complex64::new(x, y));
            }
        }
        pts
    }
}

fn single_link(points: &[Complex64], tol: f64) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; points.len()];
    let mut groups = Vec::new();
    for i in 0..points.len() {
        if assigned[i] {
            continue;
        }
        assigned[i] = true;
        let mut members = vec![i];
        let mut cursor = 0;
        while cursor < members.len() {
            let zi = points[members[cursor]];
            for j in 0..points.len() {
                if !assigned[j] && (points[j] - zi).norm() < tol {
                    assigned[j] = true;
                    members.push(j);
                }
            }
            cursor += 1;
        }
        groups.push(members);
    }
    groups
}

/// Taylor coefficients of `q` at `z` below order `m` are negligible.
fn is_root_of_multiplicity(q: &Poly, z: Complex64, m: usize) -> bool {
    let t = q.taylor_at(z);
    let scale = t.iter().map(|c| c.norm()).fold(0.0, f64::max);
    t.iter().take(m).all(|c| c.norm() <= 1e-9 * scale)
}

/// Convex hull (counter-clockwise, no repeated endpoint) by monotone chain.
pub(crate) fn convex_hull(points: &[Complex64]) -> Vec<Complex64> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap()));
    pts.dedup_by(|a, b| (*a - *b).norm() < 1e-15);
    if pts.len() < 3 {
        return pts;
    }
    let cross = |o: Complex64, a: Complex64, b: Complex64| (a - o).re * (b - o).im - (a - o).im * (b - o).re;
    let mut lower: Vec<Complex64> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 1e-15 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Complex64> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 1e-15 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn segment_distance(a: Complex64, b: Complex64, z: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

/// Euclidean distance from `z` to the hull polygon (0 inside).
pub(crate) fn distance_to_hull(hull: &[Complex64], z: Complex64) -> f64 {
    match hull.len() {
        0 => f64::INFINITY,
        1 => (z - hull[0]).norm(),
        2 => segment_distance(hull[0], hull[1], z),
        n => {
            let inside = (0..n).all(|i| {
                let a = hull[i];
                let b = hull[(i + 1) % n];
                (b - a).re * (z - a).im - (b - a).im * (z - a).re >= 0.0
            });
            if inside {
                0.0
            } else {
                (0..n)
                    .map(|i| segment_distance(hull[i], hull[(i + 1) % n], z))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn two_point_expansion() {
        let p = MonicPolynomial::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!(close(p.coeffs()[0], c(-1.0, 0.0), 1e-15));
        assert!(close(p.coeffs()[1], c(0.0, 0.0), 1e-15));
        assert!(close(p.eval(c(0.0, 0.0)), c(-1.0, 0.0), 1e-15));
        assert!(p.has_simple_roots());
    }

    #[test]
    fn quartic_from_eighth_roots() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = MonicPolynomial::from_roots(&[c(s, s), c(-s, s), c(-s, -s), c(s, -s)]).unwrap();
        let expected = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        for (a, b) in p.coeffs().iter().zip(expected.iter()) {
            assert!(close(*a, *b, 1e-15), "{a} vs {b}");
        }
        assert!(p.eval(c(s, s)).norm() <= 1e-14);
    }

    #[test]
    fn perturbed_quartic_coefficients() {
        let eps = 0.03;
        let t = PI / 4.0 - eps;
        let roots = [
            Complex64::from_polar(1.0, t),
            -Complex64::from_polar(1.0, -t),
            -Complex64::from_polar(1.0, t),
            Complex64::from_polar(1.0, -t),
        ];
        let p = MonicPolynomial::from_roots(&roots).unwrap();
        let s2 = (2.0 * eps).sin();
        let expected = [c(1.0, 0.0), c(0.0, 0.0), c(-2.0 * s2, 0.0), c(0.0, 0.0)];
        for (a, b) in p.coeffs().iter().zip(expected.iter()) {
            assert!(close(*a, *b, 1e-14), "{a} vs {b}");
        }
    }

    #[test]
    fn empty_roots_rejected() {
        assert_eq!(MonicPolynomial::from_roots(&[]), Err(Error::EmptyRoots));
    }

    #[test]
    fn repeated_roots_flagged() {
        let p = MonicPolynomial::from_roots(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!(!p.has_simple_roots());
        assert!(matches!(p.lagrange_basis(0), Err(Error::RepeatedRoots { .. })));
    }

    #[test]
    fn perturbed_quartic_against_first_order_expansion() {
        let eps = 0.01;
        let p = model_polynomial(4, eps).unwrap();
        // On the real axis |p(t)| = t^4 - 4 t^2 eps + 1 + O(eps^2).
        let real = p.eval(c(1.0, 0.0)).norm();
        assert!((real - (2.0 - 4.0 * eps)).abs() < 2e-4, "{real}");
        // On the imaginary axis the first-order term enters with the opposite sign.
        let imag = p.eval(c(0.0, 1.0)).norm();
        assert!((imag - (2.0 + 4.0 * eps)).abs() < 2e-4, "{imag}");
    }

    #[test]
    fn derivatives() {
        let p = MonicPolynomial::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let d = p.derivative();
        assert_eq!(d.degree(), 1);
        assert!(close(d.coeffs()[1], c(2.0, 0.0), 1e-15));
        assert!(close(d.coeffs()[0], c(0.0, 0.0), 1e-15));

        let eps = PI / 70.0;
        let q = model_polynomial(4, eps).unwrap();
        let dq = q.derivative();
        let s2 = (2.0 * eps).sin();
        assert!(close(dq.coeffs()[3], c(4.0, 0.0), 1e-13));
        assert!(close(dq.coeffs()[1], c(-4.0 * s2, 0.0), 1e-13));
        assert!(dq.coeffs()[0].norm() < 1e-13 && dq.coeffs()[2].norm() < 1e-13);
        for z in [c(0.3, -0.2), c(1.1, 0.7)] {
            assert!(close(q.eval_derivative(z), dq.eval(z), 1e-13));
        }
    }

    #[test]
    fn critical_points_examples() {
        let p = MonicPolynomial::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let cp = p.critical_points().unwrap();
        assert_eq!(cp.len(), 1);
        assert!(cp[0].point.norm() < 1e-14 && cp[0].multiplicity == 1);

        let s = std::f64::consts::FRAC_1_SQRT_2;
        let q = MonicPolynomial::from_roots(&[c(s, s), c(-s, s), c(-s, -s), c(s, -s)]).unwrap();
        let cq = q.critical_points().unwrap();
        assert_eq!(cq.len(), 1);
        assert_eq!(cq[0].multiplicity, 3);
        assert!(cq[0].point.norm() < 1e-7);

        let eps = PI / 70.0;
        let m = model_polynomial(4, eps).unwrap();
        let cm = m.critical_points().unwrap();
        assert_eq!(cm.len(), 3);
        let r = (2.0 * eps).sin().sqrt();
        assert!((r - 0.2995).abs() < 2e-4);
        assert!(close(cm[0].point, c(-r, 0.0), 1e-10));
        assert!(close(cm[1].point, c(0.0, 0.0), 1e-10));
        assert!(close(cm[2].point, c(r, 0.0), 1e-10));
    }

    #[test]
    fn linear_polynomial_has_no_critical_points() {
        let p = MonicPolynomial::from_roots(&[c(2.0, 0.0)]).unwrap();
        assert!(matches!(p.critical_points(), Err(Error::DegreeTooSmall { .. })));
    }

    #[test]
    fn lagrange_basis_quadratic() {
        let p = MonicPolynomial::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let d1 = p.lagrange_basis(0).unwrap();
        let d2 = p.lagrange_basis(1).unwrap();
        assert!(close(d1.coeffs()[0], c(0.5, 0.0), 1e-15) && close(d1.coeffs()[1], c(0.5, 0.0), 1e-15));
        assert!(close(d2.coeffs()[0], c(0.5, 0.0), 1e-15) && close(d2.coeffs()[1], c(-0.5, 0.0), 1e-15));
    }

    #[test]
    fn lagrange_basis_quartic_matches_closed_form() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = MonicPolynomial::from_roots(&[c(s, s), c(-s, s), c(-s, -s), c(s, -s)]).unwrap();
        let d1 = p.lagrange_basis(0).unwrap();
        // (-1/8 - i/8)((1+i) + sqrt2 z)(z^2 + i)
        let closed = Poly::new(vec![c(1.0, 1.0), c(2f64.sqrt(), 0.0)])
            .mul(&Poly::new(vec![c(0.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)]))
            .scale(c(-0.125, -0.125));
        for k in 0..4 {
            assert!(close(d1.coeffs()[k], closed.coeffs()[k], 1e-14));
        }
        // Alternative printed form with denominator 4 sqrt 2.
        let r2 = 2f64.sqrt();
        let printed = [c(r2, 0.0), c(1.0, -1.0), c(0.0, -r2), c(-1.0, -1.0)];
        for k in 0..4 {
            assert!(close(d1.coeffs()[k], printed[k] / (4.0 * r2), 1e-14));
        }
    }

    #[test]
    fn partition_of_unity_coefficientwise() {
        let p = model_polynomial(6, 0.02).unwrap();
        let sum = p
            .lagrange_basis_all()
            .unwrap()
            .iter()
            .fold(Poly::constant(c(0.0, 0.0)), |acc, b| acc.add(b));
        assert!(close(sum.coeffs()[0], c(1.0, 0.0), 1e-12));
        for k in 1..sum.coeffs().len() {
            assert!(sum.coeffs()[k].norm() <= 1e-12);
        }
    }

    #[test]
    fn model_quadratic_is_unchanged() {
        for eps in [0.0, 0.3, 0.7] {
            let p = model_polynomial(2, eps).unwrap();
            assert!(close(p.coeffs()[0], c(-1.0, 0.0), 1e-15));
            assert!(p.coeffs()[1].norm() < 1e-15);
        }
    }

    #[test]
    fn model_sextic_matches_factored_form() {
        let eps = PI / 70.0;
        let p = model_polynomial(6, eps).unwrap();
        let t = PI / 3.0 - eps;
        // Conjugate pairs adjacent to the imaginary axis move toward the real axis.
        let expected = MonicPolynomial::from_roots(&[
            c(1.0, 0.0),
            c(-1.0, 0.0),
            Complex64::from_polar(1.0, t),
            Complex64::from_polar(1.0, -t),
            -Complex64::from_polar(1.0, t),
            -Complex64::from_polar(1.0, -t),
        ])
        .unwrap();
        for (a, b) in p.coeffs().iter().zip(expected.coeffs()) {
            assert!(close(*a, *b, 1e-13));
        }
    }

    #[test]
    fn model_family_errors() {
        assert!(model_polynomial(3, 0.01).is_err());
        assert!(model_polynomial(4, 1.0).is_err());
        assert!(model_polynomial(4, -0.1).is_err());
    }

    #[test]
    fn cubic_fixture_roots() {
        let p = cubic_fixture(PI / 70.0).unwrap();
        assert!(p.eval(c(1.0, 0.0)).norm() < 1e-14);
        assert!(p.coeffs().iter().all(|z| z.im.abs() < 1e-14));
    }

    #[test]
    fn separation_task_bounds() {
        assert!(SeparationTask::new(-0.1).is_err());
        assert!(SeparationTask::new(PI / 2.0).is_err());
        let t = SeparationTask::new(0.0).unwrap();
        let pts = t.sample_points(5);
        assert!(pts.iter().all(|z| z.im == 0.0));
    }

    #[test]
    fn taylor_shift() {
        let p = Poly::new(vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        // z^2 - 1 at z = 1 + t is 2t + t^2.
        let t = p.taylor_at(c(1.0, 0.0));
        assert!(close(t[0], c(0.0, 0.0), 1e-15));
        assert!(close(t[1], c(2.0, 0.0), 1e-15));
        assert!(close(t[2], c(1.0, 0.0), 1e-15));
    }

    #[test]
    fn hull_distance() {
        let hull = convex_hull(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        assert_eq!(hull.len(), 2);
        assert!(distance_to_hull(&hull, c(0.0, 0.0)) < 1e-15);
        assert!((distance_to_hull(&hull, c(0.0, 1.0)) - 1.0).abs() < 1e-15);
        let sq = convex_hull(&[c(1.0, 1.0), c(-1.0, 1.0), c(-1.0, -1.0), c(1.0, -1.0), c(0.0, 0.0)]);
        assert_eq!(sq.len(), 4);
        assert_eq!(distance_to_hull(&sq, c(0.2, 0.3)), 0.0);
        assert!((distance_to_hull(&sq, c(2.0, 0.0)) - 1.0).abs() < 1e-15);
    }
}
