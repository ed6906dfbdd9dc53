//! Matrix functions from multicentric series: `p(A)`, the power schedule for
//! `p(A)^n`, Riesz projections and sign functions with their a priori bound,
//! and two independent oracles (eigendecomposition, resolvent quadrature).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fold::fold_multicentric;
use crate::lemniscate::{
    component_count_on_field, separates_imaginary_axis, sum_abs_delta, Field, GridSpec,
    LemniscateAnalysis,
};
use crate::linalg;
use crate::matrix::DenseComplexMatrix;
use crate::poly::{MonicPolynomial, Poly};
use crate::series::{fj_interpolation, JetSpec};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Eigenvector bases with a larger condition number are refused by the eigen oracle.
pub const EIGEN_COND_LIMIT: f64 = 1e8;
/// Default number of trapezoid nodes of the contour oracle.
pub const DEFAULT_QUADRATURE_NODES: usize = 256;

/// `q(A)` by Horner's rule.
pub fn poly_apply(q: &Poly, a: &DenseComplexMatrix) -> DenseComplexMatrix {
    let mut acc = DenseComplexMatrix::zeros(a.n());
    for &c in q.coeffs().iter().rev() {
        acc = (&acc * a).add_identity(c);
    }
    acc
}

/// One step of the doubling schedule.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerStep {
    pub n: usize,
    #[serde(with = "crate::format::rounded")]
    pub norm: f64,
    #[serde(with = "crate::format::rounded")]
    pub level: f64,
    pub separates_axis: bool,
    pub components: Option<usize>,
}

/// Result of [`power_schedule`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PowerSchedule {
    pub n: usize,
    #[serde(with = "crate::format::rounded")]
    pub level: f64,
    #[serde(skip)]
    pub power: DenseComplexMatrix,
    pub trace: Vec<PowerStep>,
}

/// Smallest `n = 2^m`, `m <= m_max`, for which `rho_n = ||p(A)^n||^(1/n)`
/// gives a sublevel set with at least two components avoiding the
/// imaginary axis. `p(A)^n` is formed by repeated squaring.
pub fn power_schedule(
    p: &MonicPolynomial,
    a: &DenseComplexMatrix,
    m_max: usize,
    grid: GridSpec,
) -> Result<PowerSchedule> {
    let field = Field::sample(p, grid);
    let mut power = poly_apply(&p.as_poly(), a);
    let mut trace = Vec::new();
    let mut level = f64::NAN;
    for m in 0..=m_max {
        let n = 1usize << m;
        let norm = power.norm2();
        level = norm.powf(1.0 / n as f64);
        let separates_axis = separates_imaginary_axis(p, level);
        let components = component_count_on_field(p, &field, level).ok();
        trace.push(PowerStep {
            n,
            norm,
            level,
            separates_axis,
            components,
        });
        if separates_axis && components.map(|c| c >= 2).unwrap_or(false) {
            return Ok(PowerSchedule {
                n,
                level,
                power,
                trace,
            });
        }
        if m < m_max {
            power = &power * &power;
        }
    }
    Err(Error::PowerScheduleExhausted {
        steps: m_max,
        last_level: level,
    })
}

/// How the locally constant function `phi` is specified.
#[derive(Debug, Clone, PartialEq)]
pub enum Assignment {
    /// `right` at centers with positive real part, `left` at the others.
    RightHalfPlane { right: Complex64, left: Complex64 },
    /// One value per sublevel component at the level `||p(A)^n||^(1/n)`.
    PerComponent(Vec<Complex64>),
    /// One value per root of `p`.
    PerCenter(Vec<Complex64>),
}

impl Assignment {
    /// `+1` on the right half-plane, `-1` on the left.
    pub fn sign() -> Self {
        Assignment::RightHalfPlane {
            right: ONE,
            left: -ONE,
        }
    }

    /// `1` on the right half-plane, `0` on the left.
    pub fn right_projector() -> Self {
        Assignment::RightHalfPlane {
            right: ONE,
            left: ZERO,
        }
    }

    fn center_values(
        &self,
        p: &MonicPolynomial,
        analysis: Option<&LemniscateAnalysis>,
    ) -> Result<Vec<Complex64>> {
        match self {
            Assignment::RightHalfPlane { right, left } => p
                .roots()
                .iter()
                .enumerate()
                .map(|(j, z)| {
                    if z.re.abs() < 1e-12 {
                        Err(Error::CenterOutsideComponents {
                            index: j,
                            center: format!("{z}"),
                        })
                    } else if z.re > 0.0 {
                        Ok(*right)
                    } else {
                        Ok(*left)
                    }
                })
                .collect(),
            Assignment::PerCenter(values) => {
                if values.len() != p.degree() {
                    return Err(Error::DimensionMismatch(format!(
                        "{} values for {} centers",
                        values.len(),
                        p.degree()
                    )));
                }
                Ok(values.clone())
            }
            Assignment::PerComponent(values) => {
                let analysis = analysis.ok_or_else(|| {
                    Error::InvalidParameter("component assignment needs a resolvable level".into())
                })?;
                if values.len() != analysis.component_count() {
                    return Err(Error::DimensionMismatch(format!(
                        "{} values for {} components",
                        values.len(),
                        analysis.component_count()
                    )));
                }
                p.roots()
                    .iter()
                    .enumerate()
                    .map(|(j, &z)| {
                        analysis
                            .component_of(z)
                            .map(|c| values[c])
                            .ok_or(Error::CenterOutsideComponents {
                                index: j,
                                center: format!("{z}"),
                            })
                    })
                    .collect()
            }
        }
    }
}

/// Which power of `s` enters the bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExponentRule {
    /// `1` when the nearest outside critical point is simple, else `d - 1`.
    Auto,
    /// Always `1`.
    Simple,
    /// Always `d - 1`.
    General,
}

/// Tuning of [`riesz_projection`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RieszOptions {
    /// Highest power of `w` kept in the series `f_j`.
    pub max_order: usize,
    /// A term counts as negligible below this fraction of the running sum.
    pub term_tol: f64,
    /// Largest acceptable last term when the order cap is reached.
    pub tail_tol: f64,
    pub grid: GridSpec,
    pub exponent: ExponentRule,
}

impl Default for RieszOptions {
    fn default() -> Self {
        RieszOptions {
            max_order: 512,
            term_tol: 1e-12,
            tail_tol: 1e-6,
            grid: GridSpec::default(),
            exponent: ExponentRule::Auto,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostics {
    /// `||P^2 - P||`.
    #[serde(with = "crate::format::rounded")]
    pub idempotency: f64,
    /// `||AP - PA||`.
    #[serde(with = "crate::format::rounded")]
    pub commutator: f64,
    #[serde(with = "crate::format::complex_pair")]
    pub trace: Complex64,
    /// `||S^2 - I||` for sign assignments.
    #[serde(with = "crate::format::rounded_opt")]
    pub sign_defect: Option<f64>,
    /// Frobenius norm of the last series term added.
    #[serde(with = "crate::format::rounded")]
    pub last_term: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundInputs {
    #[serde(with = "crate::format::rounded")]
    pub s: f64,
    #[serde(rename = "C", with = "crate::format::rounded")]
    pub c: f64,
    pub exponent: u32,
}

/// Everything computed by [`riesz_projection`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProjectionReport {
    pub n: usize,
    #[serde(with = "crate::format::rounded")]
    pub level: f64,
    /// Highest power of `w = p(A)` that entered the sum.
    pub order: usize,
    pub converged: bool,
    #[serde(with = "crate::format::complex_vec")]
    pub center_values: Vec<Complex64>,
    pub projector: DenseComplexMatrix,
    pub sign: Option<DenseComplexMatrix>,
    /// `||phi(A)||` (of `S` for sign assignments).
    #[serde(with = "crate::format::rounded")]
    pub phi_norm: f64,
    #[serde(with = "crate::format::rounded_opt")]
    pub bound: Option<f64>,
    pub bound_inputs: Option<BoundInputs>,
    pub diagnostics: Diagnostics,
    pub power_trace: Vec<PowerStep>,
}

impl ProjectionReport {
    /// `phi(A)`: the sign matrix when present, otherwise the projector.
    pub fn phi(&self) -> &DenseComplexMatrix {
        self.sign.as_ref().unwrap_or(&self.projector)
    }
}

/// `phi(A) = sum_j delta_j(A) sum_{k<n} p(A)^k f_{j,k}(p(A)^n)` for the
/// locally constant `phi` given by `assignment`.
///
/// With values `+1/-1` the result is the sign matrix `S` and the projector
/// is `(I + S)/2`; otherwise `phi(A)` is reported as the projector.
pub fn riesz_projection(
    p: &MonicPolynomial,
    a: &DenseComplexMatrix,
    n: usize,
    assignment: &Assignment,
    options: &RieszOptions,
) -> Result<ProjectionReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("power n must be >= 1".into()));
    }
    p.require_simple()?;
    let dim = a.n();
    let pa = poly_apply(&p.as_poly(), a);
    let b = pa.pow(n);
    let level = b.norm2().powf(1.0 / n as f64);
    let analysis = LemniscateAnalysis::build(p, level, options.grid).ok();
    let values = assignment.center_values(p, analysis.as_ref())?;

    let order = options.max_order.max(n - 1);
    let jets = JetSpec::constant(&values, order)?;
    let folded = fold_multicentric(&fj_interpolation(p, &jets, order)?, n)?;

    // weights[j][k] = delta_j(A) p(A)^k.
    let basis = p.lagrange_basis_all()?;
    let deltas: Vec<DenseComplexMatrix> = basis.iter().map(|q| poly_apply(q, a)).collect();
    let mut pa_pow = vec![DenseComplexMatrix::identity(dim)];
    for k in 1..n {
        pa_pow.push(&pa_pow[k - 1] * &pa);
    }
    let weights: Vec<Vec<DenseComplexMatrix>> = deltas
        .iter()
        .map(|d| pa_pow.iter().map(|pk| d * pk).collect())
        .collect();

    let mut sum = DenseComplexMatrix::zeros(dim);
    let mut b_pow = DenseComplexMatrix::identity(dim);
    let mut small_streak = 0;
    let mut last_term = f64::INFINITY;
    let mut converged = false;
    let mut used_order = 0;
    let mut m = 0;
    while m * n <= order {
        let mut inner = DenseComplexMatrix::zeros(dim);
        for (j, row) in weights.iter().enumerate() {
            for (k, w) in row.iter().enumerate() {
                let coeff = folded.part(j, k).coeff(m);
                if k + m * n <= order && coeff != ZERO {
                    inner = &inner + &w.scale(coeff);
                }
            }
        }
        let term = &inner * &b_pow;
        sum = &sum + &term;
        last_term = term.frobenius();
        used_order = (m * n + n - 1).min(order);
        if last_term <= options.term_tol * sum.frobenius().max(1.0) {
            small_streak += 1;
            if small_streak >= 2 {
                converged = true;
                break;
            }
        } else {
            small_streak = 0;
        }
        b_pow = &b_pow * &b;
        m += 1;
    }
    if !converged && !(last_term <= options.tail_tol) {
        return Err(Error::NonConvergentTail(last_term));
    }

    let is_sign = values.iter().all(|&v| v == ONE || v == -ONE);
    let (projector, sign) = if is_sign {
        let p_mat = sum.add_identity(ONE).scale(Complex64::new(0.5, 0.0));
        (p_mat, Some(sum))
    } else {
        (sum, None)
    };
    let idempotency = (&(&projector * &projector) - &projector).norm2();
    let commutator = (&(a * &projector) - &(&projector * a)).norm2();
    let sign_defect = sign
        .as_ref()
        .map(|s| (&(s * s) - &DenseComplexMatrix::identity(dim)).norm2());
    let phi_norm = sign.as_ref().unwrap_or(&projector).norm2();
    let sup_phi = values.iter().map(|v| v.norm()).fold(0.0, f64::max);

    let mut bound = None;
    let mut bound_inputs = None;
    if let Some(analysis) = &analysis {
        if let (Ok((critical, s)), Ok(sum_delta)) = (
            analysis.nearest_outside_critical(),
            sum_abs_delta(p, Complex64::new(level, 0.0)),
        ) {
            let exponent = match options.exponent {
                ExponentRule::Simple => 1,
                ExponentRule::General => p.degree() as u32 - 1,
                ExponentRule::Auto if critical.multiplicity == 1 => 1,
                ExponentRule::Auto => p.degree() as u32 - 1,
            };
            let c = sum_delta * s;
            bound = Some(riesz_bound(p, a, n, level, c, s, exponent, sup_phi)?);
            bound_inputs = Some(BoundInputs { s, c, exponent });
        }
    }

    Ok(ProjectionReport {
        n,
        level,
        order: used_order,
        converged,
        center_values: values,
        diagnostics: Diagnostics {
            idempotency,
            commutator,
            trace: projector.trace(),
            sign_defect,
            last_term,
        },
        projector,
        sign,
        phi_norm,
        bound,
        bound_inputs,
        power_trace: Vec::new(),
    })
}

/// Runs [`power_schedule`] and then [`riesz_projection`] at the power it finds.
pub fn riesz_projection_auto(
    p: &MonicPolynomial,
    a: &DenseComplexMatrix,
    m_max: usize,
    assignment: &Assignment,
    options: &RieszOptions,
) -> Result<ProjectionReport> {
    let schedule = power_schedule(p, a, m_max, options.grid)?;
    let mut report = riesz_projection(p, a, schedule.n, assignment, options)?;
    report.power_trace = schedule.trace;
    Ok(report)
}

/// `(1 + C/s^e) (sum_{k<n} ||p(A)^k|| / rho^k) (sum_j ||delta_j(A)||) sup|phi|`.
#[allow(clippy::too_many_arguments)]
pub fn riesz_bound(
    p: &MonicPolynomial,
    a: &DenseComplexMatrix,
    n: usize,
    level: f64,
    c: f64,
    s: f64,
    exponent: u32,
    sup_phi: f64,
) -> Result<f64> {
    if !(s > 0.0) {
        return Err(Error::InvalidParameter(format!("gap s must be positive, got {s}")));
    }
    let pa = poly_apply(&p.as_poly(), a);
    let mut pk = DenseComplexMatrix::identity(a.n());
    let mut power_sum = 0.0;
    for k in 0..n {
        power_sum += pk.norm2() / level.powi(k as i32);
        pk = &pk * &pa;
    }
    let delta_sum: f64 = p
        .lagrange_basis_all()?
        .iter()
        .map(|q| poly_apply(q, a).norm2())
        .sum();
    Ok((1.0 + c / s.powi(exponent as i32)) * power_sum * delta_sum * sup_phi)
}

/// Eigenvalues from the complex Schur form.
pub fn eigenvalues(a: &DenseComplexMatrix) -> Result<Vec<Complex64>> {
    linalg::eigenvalues(a.as_dmatrix())
}

/// `V diag(selected(lambda_i)) V^{-1}`; refuses defective or nearly defective matrices.
pub fn oracle_projection_eigen<F>(a: &DenseComplexMatrix, selected: F) -> Result<DenseComplexMatrix>
where
    F: Fn(Complex64) -> bool,
{
    let (values, vectors) = linalg::eigen_decomposition(a.as_dmatrix())?;
    let sv = vectors.clone().svd(false, false).singular_values;
    let (hi, lo) = (sv.max(), sv.min());
    let cond = if lo > 0.0 { hi / lo } else { f64::INFINITY };
    if !(cond < EIGEN_COND_LIMIT) {
        return Err(Error::IllConditioned(cond));
    }
    let inv = linalg::inverse(&vectors)?;
    let mut scaled = vectors;
    for (k, &v) in values.iter().enumerate() {
        let f = if selected(v) { ONE } else { ZERO };
        let mut col = scaled.column_mut(k);
        col *= f;
    }
    DenseComplexMatrix::from_dmatrix(scaled * inv)
}

/// Trapezoid rule for `(1/2 pi i) oint (lambda I - A)^{-1} d lambda` on the
/// circle `|lambda - center| = radius`, checked against twice as many nodes.
pub fn oracle_projection_contour(
    a: &DenseComplexMatrix,
    center: Complex64,
    radius: f64,
    nodes: usize,
) -> Result<DenseComplexMatrix> {
    if nodes == 0 || !(radius > 0.0) {
        return Err(Error::InvalidParameter("need nodes >= 1 and radius > 0".into()));
    }
    let coarse = trapezoid(a, center, radius, nodes)?;
    let fine = trapezoid(a, center, radius, 2 * nodes)?;
    let change = (&fine - &coarse).norm2();
    if change > 1e-9 * fine.norm2().max(1.0) {
        return Err(Error::QuadratureNotConverged(change));
    }
    Ok(fine)
}

fn trapezoid(
    a: &DenseComplexMatrix,
    center: Complex64,
    radius: f64,
    nodes: usize,
) -> Result<DenseComplexMatrix> {
    let n = a.n();
    let mut acc = DenseComplexMatrix::zeros(n);
    for q in 0..nodes {
        let e = Complex64::from_polar(1.0, 2.0 * PI * q as f64 / nodes as f64);
        let lambda = center + e * radius;
        let shifted = a.scale(-ONE).add_identity(lambda);
        let resolvent = DenseComplexMatrix::from_dmatrix(linalg::inverse(shifted.as_dmatrix())?)?;
        acc = &acc + &resolvent.scale(e * radius);
    }
    Ok(acc.scale(Complex64::new(1.0 / nodes as f64, 0.0)))
}

/// `A = [[B, X], [0, -B]]` with `B = [[alpha, 1], [0, alpha]]`, `X = [[0, gamma], [gamma, 0]]`.
pub fn block_matrix(alpha: f64, gamma: f64) -> DenseComplexMatrix {
    DenseComplexMatrix::from_real_rows(&[
        &[alpha, 1.0, 0.0, gamma],
        &[0.0, alpha, gamma, 0.0],
        &[0.0, 0.0, -alpha, -1.0],
        &[0.0, 0.0, 0.0, -alpha],
    ])
    .expect("4x4 literal")
}

/// Closed form of `p(A)^n` for [`block_matrix`] and `p(z) = z^2 - 1`:
/// `[[C^n, n c^{n-1} Y], [0, C^n]]` with `c = alpha^2 - 1`,
/// `C^n = c^n I + 2 alpha n c^{n-1} N` and `Y = diag(gamma, -gamma)`.
pub fn block_power_closed_form(alpha: f64, gamma: f64, n: usize) -> DenseComplexMatrix {
    let c = alpha * alpha - 1.0;
    let cn = c.powi(n as i32);
    let nc = n as f64 * c.powi(n as i32 - 1);
    let off = 2.0 * alpha * nc;
    let y = nc * gamma;
    DenseComplexMatrix::from_real_rows(&[
        &[cn, off, y, 0.0],
        &[0.0, cn, 0.0, -y],
        &[0.0, 0.0, cn, off],
        &[0.0, 0.0, 0.0, cn],
    ])
    .expect("4x4 literal")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlockExampleReport {
    pub alpha: f64,
    pub gamma: f64,
    pub n: usize,
    /// Largest entrywise deviation of the computed power from the closed
    /// form, relative to `max(1, max |entry|)`.
    #[serde(with = "crate::format::rounded")]
    pub closed_form_error: f64,
    #[serde(with = "crate::format::rounded")]
    pub norm: f64,
    /// `|c|^{n-1} (|c| + n (|alpha| + |gamma|))`.
    #[serde(with = "crate::format::rounded")]
    pub asymptotic: f64,
    #[serde(with = "crate::format::rounded")]
    pub ratio: f64,
    pub power: DenseComplexMatrix,
}

pub fn block_example(alpha: f64, gamma: f64, n: usize) -> Result<BlockExampleReport> {
    if n == 0 || !alpha.is_finite() || !gamma.is_finite() {
        return Err(Error::InvalidParameter("need finite alpha, gamma and n >= 1".into()));
    }
    let p = MonicPolynomial::from_roots(&[ONE, -ONE])?;
    let power = poly_apply(&p.as_poly(), &block_matrix(alpha, gamma)).pow(n);
    let closed = block_power_closed_form(alpha, gamma, n);
    let scale = closed.max_abs().max(1.0);
    let closed_form_error = (&power - &closed).max_abs() / scale;
    let norm = power.norm2();
    let c = (alpha * alpha - 1.0).abs();
    let asymptotic = c.powi(n as i32 - 1) * (c + n as f64 * (alpha.abs() + gamma.abs()));
    Ok(BlockExampleReport {
        alpha,
        gamma,
        n,
        closed_form_error,
        norm,
        asymptotic,
        ratio: norm / asymptotic,
        power,
    })
}
