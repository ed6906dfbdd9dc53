//! Geometry of the sublevel set `V(p, rho) = {z : |p(z)| <= rho}` on a grid:
//! contour curves, connected components, the gap `s` to the nearest
//! critical point outside the set, `L(rho)`, and the separation searches
//! for the model polynomial families.

mod components;
mod contour;
mod grid;
mod output;
mod separation;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::{find_roots, CriticalPoint, MonicPolynomial, Poly};

pub use components::{BBox, Component};
pub use contour::Polyline;
pub use grid::{Field, GridSpec};
pub use output::{contours_csv, contours_svg, AnalysisReport};
pub use separation::{
    avoids_origin, max_eta, max_eta_on_field, ratio_and_angle, segments_inside,
    separates_imaginary_axis, EtaSearch, RatioAngle,
};

use components::Labelling;

/// `|p'(zeta)|` below this marks `w` as a critical value.
pub const CRITICAL_VALUE_TOL: f64 = 1e-13;

/// Contours, components and critical-point data of `V(p, rho)` on one grid.
#[derive(Debug, Clone)]
pub struct LemniscateAnalysis {
    polynomial: MonicPolynomial,
    level: f64,
    field: Field,
    labelling: Labelling,
    contours: Vec<Polyline>,
    contour_component: Vec<Option<usize>>,
    unassigned_roots: Vec<usize>,
    critical: Vec<CriticalPoint>,
    outside_critical: Vec<CriticalPoint>,
}

impl LemniscateAnalysis {
    pub fn build(p: &MonicPolynomial, level: f64, grid: GridSpec) -> Result<Self> {
        Self::from_field(p, Field::sample(p, grid), level)
    }

    /// Reuses an already sampled `|p|` field.
    pub fn from_field(p: &MonicPolynomial, field: Field, level: f64) -> Result<Self> {
        field.check_level(level)?;
        let contours = contour::march(&field, level);
        let mut labelling = components::label(&field, level);
        if labelling.components.iter().any(|c| c.touches_boundary) {
            return Err(Error::BoxTooSmall);
        }
        let mut unassigned_roots = Vec::new();
        for (k, &root) in p.roots().iter().enumerate() {
            match labelling.component_of(&field, root) {
                Some(c) => labelling.components[c].roots.push(k),
                None => unassigned_roots.push(k),
            }
        }
        let contour_component = contours
            .iter()
            .map(|c| labelling.label_at(&field, c.inside_node.0, c.inside_node.1))
            .collect();
        let critical = if p.degree() >= 2 {
            p.critical_points()?
        } else {
            Vec::new()
        };
        let outside_critical = critical
            .iter()
            .copied()
            .filter(|c| p.eval(c.point).norm() > level)
            .collect();
        Ok(LemniscateAnalysis {
            polynomial: p.clone(),
            level,
            field,
            labelling,
            contours,
            contour_component,
            unassigned_roots,
            critical,
            outside_critical,
        })
    }

    pub fn polynomial(&self) -> &MonicPolynomial {
        &self.polynomial
    }

    pub fn level(&self) -> f64 {
        self.level
    }

    pub fn grid(&self) -> &GridSpec {
        self.field.spec()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn contours(&self) -> &[Polyline] {
        &self.contours
    }

    pub fn components(&self) -> &[Component] {
        &self.labelling.components
    }

    pub fn component_count(&self) -> usize {
        self.labelling.components.len()
    }

    /// Roots whose grid neighbourhood holds no inside node (level below grid scale).
    pub fn unassigned_roots(&self) -> &[usize] {
        &self.unassigned_roots
    }

    pub fn critical_points(&self) -> &[CriticalPoint] {
        &self.critical
    }

    /// Critical points with `|p(z_c)| > rho`.
    pub fn outside_critical(&self) -> &[CriticalPoint] {
        &self.outside_critical
    }

    /// Component containing the contour with the given index.
    pub fn contour_component(&self, contour: usize) -> Option<usize> {
        self.contour_component[contour]
    }

    /// Component containing `z`, decided on the grid.
    pub fn component_of(&self, z: Complex64) -> Option<usize> {
        self.labelling.component_of(&self.field, z)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.contours.iter().flat_map(|c| c.points.iter().copied())
    }

    /// Minimum distance from `z` to a contour vertex.
    pub fn distance_to_contours(&self, z: Complex64) -> Result<f64> {
        self.vertices()
            .map(|v| (v - z).norm())
            .reduce(f64::min)
            .ok_or(Error::EmptyContour { level: self.level })
    }

    /// Nearest critical point outside the set, with its distance to the contours.
    pub fn nearest_outside_critical(&self) -> Result<(CriticalPoint, f64)> {
        let mut best: Option<(CriticalPoint, f64)> = None;
        for &c in &self.outside_critical {
            let d = self.distance_to_contours(c.point)?;
            if best.map(|(_, b)| d < b).unwrap_or(true) {
                best = Some((c, d));
            }
        }
        best.ok_or(Error::NoOutsideCriticalPoint { level: self.level })
    }

    /// The gap `s`.
    pub fn separation_gap(&self) -> Result<f64> {
        self.nearest_outside_critical().map(|(_, d)| d)
    }

    /// `L(rho)`: maximum of `sum_j |delta_j|` over the contour vertices.
    pub fn l_rho(&self) -> Result<f64> {
        let basis = self.polynomial.lagrange_basis_all()?;
        self.vertices()
            .map(|v| basis.iter().map(|b| b.eval(v).norm()).sum::<f64>())
            .reduce(f64::max)
            .ok_or(Error::EmptyContour { level: self.level })
    }

    /// JSON-ready summary; `w` selects the point for `sum |delta_l(lambda_k, w)|`.
    pub fn report(&self, w: Option<f64>) -> Result<AnalysisReport> {
        let s = self.separation_gap().ok();
        let sum = match w {
            Some(w) => Some(sum_abs_delta(&self.polynomial, Complex64::new(w, 0.0))?),
            None => None,
        };
        Ok(AnalysisReport {
            level: self.level,
            components: self.components().to_vec(),
            s,
            l: self.l_rho()?,
            sum_abs_delta: sum,
            c: match (sum, s) {
                (Some(a), Some(b)) => Some(a * b),
                _ => None,
            },
        })
    }
}

/// Number of components of `{|p| <= level}` on an already sampled field.
///
/// A level below every sampled value is read as `d` separate discs around the
/// roots, which is the correct picture once the level is small enough; a
/// level at or above the sampled maximum, or a component touching the box,
/// is an error.
pub fn component_count_on_field(p: &MonicPolynomial, field: &Field, level: f64) -> Result<usize> {
    if level <= 0.0 || level < field.min() {
        return Ok(p.degree());
    }
    field.check_level(level)?;
    let lab = components::label(field, level);
    if lab.components.iter().any(|c| c.touches_boundary) {
        return Err(Error::BoxTooSmall);
    }
    Ok(lab.components.len())
}

pub fn extract_contours(p: &MonicPolynomial, level: f64, grid: GridSpec) -> Result<Vec<Polyline>> {
    let field = Field::sample(p, grid);
    field.check_level(level)?;
    Ok(contour::march(&field, level))
}

/// Components of `{|p| <= rho}` with their roots; fails if one touches the box.
pub fn sublevel_components(p: &MonicPolynomial, level: f64, grid: GridSpec) -> Result<Vec<Component>> {
    Ok(LemniscateAnalysis::build(p, level, grid)?.components().to_vec())
}

pub fn distance_to_contours(analysis: &LemniscateAnalysis, z: Complex64) -> Result<f64> {
    analysis.distance_to_contours(z)
}

pub fn separation_gap_s(p: &MonicPolynomial, level: f64, grid: GridSpec) -> Result<f64> {
    LemniscateAnalysis::build(p, level, grid)?.separation_gap()
}

pub fn l_rho(p: &MonicPolynomial, level: f64, grid: GridSpec) -> Result<f64> {
    LemniscateAnalysis::build(p, level, grid)?.l_rho()
}

/// `sum_{l,k} |delta_l(lambda_k, w)|` with the branches `zeta_l` found as the
/// roots of `p - w`.
pub fn sum_abs_delta(p: &MonicPolynomial, w: Complex64) -> Result<f64> {
    p.require_simple()?;
    if w.norm() == 0.0 {
        return Ok(p.degree() as f64);
    }
    if p.degree() >= 2 {
        for cp in p.critical_points()? {
            if (p.eval(cp.point) - w).norm() <= CRITICAL_VALUE_TOL.sqrt() * (1.0 + w.norm()) {
                return Err(Error::CriticalValue(format!("{w}")));
            }
        }
    }
    let mut shifted = p.full_coeffs();
    shifted[0] -= w;
    let zetas = find_roots(&shifted)?;
    let dp: Poly = p.derivative();
    let mut total = 0.0;
    for &zeta in &zetas {
        let slope = dp.eval(zeta);
        if slope.norm() < CRITICAL_VALUE_TOL {
            return Err(Error::CriticalValue(format!("{w}")));
        }
        for &lambda in p.roots() {
            // p(lambda_k) = 0, so the numerator is -w.
            total += (w / (slope * (lambda - zeta))).norm();
        }
    }
    Ok(total)
}

/// `C = sum |delta_l(lambda_k, w)| * s`.
pub fn constant_c(p: &MonicPolynomial, level: f64, w: Complex64, grid: GridSpec) -> Result<f64> {
    let s = separation_gap_s(p, level, grid)?;
    Ok(sum_abs_delta(p, w)? * s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::model_polynomial;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn quad() -> MonicPolynomial {
        MonicPolynomial::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap()
    }

    fn grid2(res: usize) -> GridSpec {
        GridSpec::square(2.0, res).unwrap()
    }

    #[test]
    fn quadratic_contour_counts() {
        let two = extract_contours(&quad(), 0.99, grid2(401)).unwrap();
        assert_eq!(two.len(), 2);
        assert!(two.iter().all(|l| l.closed));
        let one = extract_contours(&quad(), 2.0, grid2(401)).unwrap();
        assert_eq!(one.len(), 1);
    }

    #[test]
    fn quartic_unit_level_passes_origin() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let p = MonicPolynomial::from_roots(&[c(s, s), c(-s, s), c(-s, -s), c(s, -s)]).unwrap();
        let g = grid2(401);
        let a = LemniscateAnalysis::build(&p, 1.0, g).unwrap();
        assert!(a.distance_to_contours(c(0.0, 0.0)).unwrap() <= g.cell_diagonal());
    }

    #[test]
    fn level_above_field_is_flagged() {
        let g = GridSpec::square(0.5, 51).unwrap();
        assert!(matches!(
            extract_contours(&quad(), 10.0, g),
            Err(Error::EmptyContour { .. })
        ));
    }

    #[test]
    fn small_box_is_flagged() {
        let g = GridSpec::square(1.1, 101).unwrap();
        assert_eq!(sublevel_components(&quad(), 0.9, g), Err(Error::BoxTooSmall));
    }

    #[test]
    fn quadratic_components() {
        let comps = sublevel_components(&quad(), 1.5, grid2(401)).unwrap();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].roots, vec![0, 1]);
        let comps = sublevel_components(&quad(), 0.9, grid2(401)).unwrap();
        assert_eq!(comps.len(), 2);
        let mut sets: Vec<_> = comps.iter().map(|c| c.roots.clone()).collect();
        sets.sort();
        assert_eq!(sets, vec![vec![0], vec![1]]);
    }

    #[test]
    fn distances_to_origin() {
        let g = grid2(1001);
        let a = LemniscateAnalysis::build(&quad(), 0.9, g).unwrap();
        let d = a.distance_to_contours(c(0.0, 0.0)).unwrap();
        assert!((d - 0.1f64.sqrt()).abs() <= 2.0 * g.cell_diagonal());
        assert!((a.separation_gap().unwrap() - d).abs() < 1e-15);
        let b = LemniscateAnalysis::build(&quad(), 0.99, g).unwrap();
        assert!((b.distance_to_contours(c(0.0, 0.0)).unwrap() - 0.1).abs() <= 2.0 * g.cell_diagonal());
        let v = b.contours()[0].points[3];
        assert!(b.distance_to_contours(v).unwrap() <= g.cell_diagonal());
    }

    #[test]
    fn contour_fidelity() {
        let p = model_polynomial(6, PI / 70.0).unwrap();
        let g = GridSpec::square(1.5, 501).unwrap();
        let rho = 0.9922;
        let a = LemniscateAnalysis::build(&p, rho, g).unwrap();
        for v in a.vertices() {
            assert!((p.eval(v).norm() - rho).abs() <= rho * 10.0 / 501.0);
        }
    }

    #[test]
    fn no_outside_critical_point() {
        let a = LemniscateAnalysis::build(&quad(), 1.5, grid2(201)).unwrap();
        assert!(matches!(a.separation_gap(), Err(Error::NoOutsideCriticalPoint { .. })));
    }

    #[test]
    fn l_rho_is_monotone_and_matches_sweep() {
        let g = grid2(801);
        let half = l_rho(&quad(), 0.5, g).unwrap();
        let most = l_rho(&quad(), 0.9, g).unwrap();
        assert!(half <= most);
        // Brute-force sweep of |z^2 - 1| = 1: z = sqrt(1 + e^{it}).
        let one = l_rho(&quad(), 1.0, g).unwrap();
        let sweep = (0..20000)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / 20000.0;
                let z = (c(1.0, 0.0) + Complex64::from_polar(1.0, t)).sqrt();
                ((c(1.0, 0.0) + z).norm() + (c(1.0, 0.0) - z).norm()) / 2.0
            })
            .fold(0.0, f64::max);
        assert!((one - sweep).abs() < 1e-2, "{one} vs {sweep}");
    }

    #[test]
    fn sum_abs_delta_limits() {
        let p = model_polynomial(4, PI / 70.0).unwrap();
        assert_eq!(sum_abs_delta(&p, c(0.0, 0.0)).unwrap(), 4.0);
        assert!((sum_abs_delta(&p, c(1e-9, 0.0)).unwrap() - 4.0).abs() < 1e-6);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let q = MonicPolynomial::from_roots(&[c(s, s), c(-s, s), c(-s, -s), c(s, -s)]).unwrap();
        assert!(matches!(sum_abs_delta(&q, c(1.0, 0.0)), Err(Error::CriticalValue(_))));
    }
}
