//! Truncated complex power series and the multicentric coefficient series
//! `f_j` of a function given by its local Taylor jets at the roots of `p`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MonicPolynomial, Poly, PolynomialRecord};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Constant terms below this magnitude are refused by [`TruncatedSeries::reciprocal`].
pub const RECIPROCAL_TOL: f64 = 1e-14;
/// Centers with `|p'(lambda)|` below this are treated as branch points.
pub const BRANCH_POINT_TOL: f64 = 1e-12;

/// `c_0 + c_1 w + ... + c_N w^N`, with everything above `w^N` discarded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "SeriesRecord", try_from = "SeriesRecord")]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

/// JSON form `{"order": N, "coeffs": [[re,im], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub order: usize,
    #[serde(with = "crate::format::complex_vec")]
    pub coeffs: Vec<Complex64>,
}

impl From<TruncatedSeries> for SeriesRecord {
    fn from(s: TruncatedSeries) -> Self {
        SeriesRecord {
            order: s.order(),
            coeffs: s.coeffs,
        }
    }
}

impl TryFrom<SeriesRecord> for TruncatedSeries {
    type Error = Error;

    fn try_from(r: SeriesRecord) -> Result<Self> {
        if r.coeffs.len() != r.order + 1 {
            return Err(Error::Parse(format!(
                "series of order {} needs {} coefficients, got {}",
                r.order,
                r.order + 1,
                r.coeffs.len()
            )));
        }
        Ok(TruncatedSeries { coeffs: r.coeffs })
    }
}

impl TruncatedSeries {
    /// Takes `coeffs` as `c_0..c_N`; an empty vector gives the zero series of order 0.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        if coeffs.is_empty() {
            return Self::zero(0);
        }
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![ZERO; order + 1],
        }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series `w` (order at least 1 is needed for it to be nonzero).
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = ONE;
        }
        s
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(ZERO)
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Drops or zero-pads to the given order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(order + 1, ZERO);
        TruncatedSeries { coeffs: c }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    /// Multiplicative inverse; requires `|c_0| > 1e-14`.
    pub fn reciprocal(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() <= RECIPROCAL_TOL {
            return Err(Error::ZeroConstantTerm(c0.norm()));
        }
        let n = self.coeffs.len();
        let inv0 = ONE / c0;
        let mut out = vec![ZERO; n];
        out[0] = inv0;
        for k in 1..n {
            let mut acc = ZERO;
            for i in 1..=k {
                acc += self.coeffs[i] * out[k - i];
            }
            out[k] = -acc * inv0;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.reciprocal()?)
    }

    /// Formal derivative; the result has order `N-1` (order 0 stays 0).
    pub fn derive(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        }
    }

    /// Divides by `w`, assuming `c_0` is negligible; the order drops by one.
    pub fn shift_down(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        TruncatedSeries {
            coeffs: self.coeffs[1..].to_vec(),
        }
    }

    /// Partial sum at `w` by Horner's rule.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, &c| acc * w + c)
    }

    /// `sum_k c_k h^k` for a series `h` with zero constant term, at the order of `h`.
    pub fn compose(&self, h: &Self) -> Self {
        let order = h.order();
        let mut acc = Self::zero(order);
        let last = self
            .coeffs
            .iter()
            .rposition(|c| *c != ZERO)
            .unwrap_or(0)
            .min(order);
        for k in (0..=last).rev() {
            acc = &acc * h;
            acc.coeffs[0] += self.coeffs[k];
        }
        acc
    }

    /// `q(h)` for a polynomial `q`, at the order of `h` (any constant term).
    pub fn apply_poly(q: &Poly, h: &Self) -> Self {
        let mut acc = Self::zero(h.order());
        for &c in q.coeffs().iter().rev() {
            acc = &acc * h;
            acc.coeffs[0] += c;
        }
        acc
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries {
            coeffs: (0..n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        TruncatedSeries {
            coeffs: (0..n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let mut out = vec![ZERO; n];
        for (i, &a) in self.coeffs.iter().take(n).enumerate() {
            if a == ZERO {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(-ONE)
    }
}

/// Branch `zeta_l(w)` of `p(zeta) = w` through `lambda_l`, to order `order`.
///
/// Series Newton iteration, doubling the number of correct terms per step.
pub fn root_branch(p: &MonicPolynomial, l: usize, order: usize) -> Result<TruncatedSeries> {
    check_index(p, l)?;
    p.require_simple()?;
    let lambda = p.roots()[l];
    let dl = p.derivative_at_root(l);
    if dl.norm() < BRANCH_POINT_TOL {
        return Err(Error::BranchPoint {
            index: l,
            derivative: dl.norm(),
        });
    }
    let (local, dlocal) = local_form(p, l);
    let mut h = TruncatedSeries::zero(order);
    let mut correct = 1;
    while correct <= order {
        let target = (2 * correct).min(order + 1);
        let hz = h.with_order(target - 1);
        let mut residual = TruncatedSeries::apply_poly(&local, &hz);
        if target >= 2 {
            residual.coeffs[1] -= ONE;
        }
        let slope = TruncatedSeries::apply_poly(&dlocal, &hz);
        let step = residual.div(&slope)?;
        h = (&hz - &step).with_order(order);
        h.coeffs[0] = ZERO;
        correct = target;
    }
    let mut zeta = h;
    zeta.coeffs[0] = lambda;
    Ok(zeta)
}

/// `p(lambda_l + h)` and `p'(lambda_l + h)` as polynomials in `h`, built
/// from the root differences so that the constant term of the first is
/// exactly zero.
fn local_form(p: &MonicPolynomial, l: usize) -> (Poly, Poly) {
    let lambda = p.roots()[l];
    let mut local = Poly::new(vec![ZERO, ONE]);
    for (k, &mu) in p.roots().iter().enumerate() {
        if k != l {
            local = local.mul(&Poly::new(vec![lambda - mu, ONE]));
        }
    }
    let dlocal = local.derivative();
    (local, dlocal)
}

/// `delta_l(lambda_j, w) = (p(lambda_j) - w) / (p'(zeta_l(w)) (lambda_j - zeta_l(w)))`.
pub fn delta_lambda_series(
    p: &MonicPolynomial,
    l: usize,
    j: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    check_index(p, j)?;
    let zeta = root_branch(p, l, order + 1)?;
    delta_from_branch(p, &zeta, l, j, order)
}

fn delta_from_branch(
    p: &MonicPolynomial,
    zeta: &TruncatedSeries,
    l: usize,
    j: usize,
    order: usize,
) -> Result<TruncatedSeries> {
    let (_, dlocal) = local_form(p, l);
    let mut h = zeta.clone();
    h.coeffs[0] = ZERO;
    let slope = TruncatedSeries::apply_poly(&dlocal, &h);
    let gap = &TruncatedSeries::constant(p.roots()[j] - p.roots()[l], zeta.order()) - &h;
    let mut den = &slope * &gap;
    if j == l {
        // Numerator -w and denominator both vanish at w = 0; cancel one w.
        den.coeffs[0] = ZERO;
        let den = den.shift_down().with_order(order);
        Ok(-&den.reciprocal()?)
    } else {
        let inv = den.with_order(order).reciprocal()?;
        let mut num = TruncatedSeries::zero(order);
        if order >= 1 {
            num.coeffs[1] = -ONE;
        }
        Ok(&num * &inv)
    }
}

/// Table `b[n][m]`, `0 <= m <= n <= n_max`, of polynomials with
/// `(d/dz)^n g(p(z)) = sum_m b_{nm}(z) g^{(m)}(p(z))`.
///
/// Row 0 is `[1]` (the identity operator) and `b[n][0] = 0` for `n >= 1`.
pub fn b_table(p: &MonicPolynomial, n_max: usize) -> Vec<Vec<Poly>> {
    let dp = p.derivative();
    let zero = Poly::constant(ZERO);
    let mut table: Vec<Vec<Poly>> = vec![vec![Poly::constant(ONE)]];
    if n_max == 0 {
        return table;
    }
    table.push(vec![zero.clone(), dp.clone()]);
    for n in 1..n_max {
        let prev = &table[n];
        let mut row = vec![zero.clone(); n + 2];
        for m in 1..=n + 1 {
            let carried = if m > 1 { prev[m - 1].mul(&dp) } else { zero.clone() };
            let differentiated = if m <= n { prev[m].derivative() } else { zero.clone() };
            row[m] = carried.add(&differentiated);
        }
        table.push(row);
    }
    table
}

/// Local Taylor coefficients `phi^{(k)}(lambda_j)/k!` at every center.
#[derive(Debug, Clone, PartialEq)]
pub struct JetSpec {
    taylor: Vec<Vec<Complex64>>,
}

impl JetSpec {
    /// From derivatives `phi^{(k)}(lambda_j)`; every center needs the same count.
    pub fn from_derivatives(derivs: Vec<Vec<Complex64>>) -> Result<Self> {
        let taylor = derivs
            .into_iter()
            .map(|row| {
                let mut fact = 1.0;
                row.into_iter()
                    .enumerate()
                    .map(|(k, v)| {
                        if k > 0 {
                            fact *= k as f64;
                        }
                        v / fact
                    })
                    .collect()
            })
            .collect();
        Self::from_taylor(taylor)
    }

    pub fn from_taylor(taylor: Vec<Vec<Complex64>>) -> Result<Self> {
        let len = taylor.first().map(Vec::len).unwrap_or(0);
        if len == 0 || taylor.iter().any(|r| r.len() != len) {
            return Err(Error::JetShape);
        }
        Ok(JetSpec { taylor })
    }

    /// Locally constant function: `values[j]` at center `j`, zero derivatives.
    pub fn constant(values: &[Complex64], order: usize) -> Result<Self> {
        Self::from_taylor(
            values
                .iter()
                .map(|&v| {
                    let mut row = vec![ZERO; order + 1];
                    row[0] = v;
                    row
                })
                .collect(),
        )
    }

    /// Jets of a polynomial `phi` at the given centers.
    pub fn from_poly(phi: &Poly, centers: &[Complex64], order: usize) -> Result<Self> {
        Self::from_taylor(
            centers
                .iter()
                .map(|&c| {
                    let mut t = phi.taylor_at(c);
                    t.resize(order + 1, ZERO);
                    t
                })
                .collect(),
        )
    }

    pub fn centers(&self) -> usize {
        self.taylor.len()
    }

    pub fn order(&self) -> usize {
        self.taylor[0].len() - 1
    }

    pub fn taylor(&self, j: usize) -> &[Complex64] {
        &self.taylor[j]
    }

    fn check_against(&self, p: &MonicPolynomial, order: usize) -> Result<()> {
        if self.centers() != p.degree() || self.order() < order {
            return Err(Error::JetShape);
        }
        Ok(())
    }
}

/// `phi(z) = sum_j delta_j(z) f_j(p(z))` with truncated `f_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MulticentricRecord", try_from = "MulticentricRecord")]
pub struct MulticentricSeries {
    polynomial: MonicPolynomial,
    branches: Vec<TruncatedSeries>,
    basis: Vec<Poly>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MulticentricRecord {
    pub polynomial: PolynomialRecord,
    pub branches: Vec<TruncatedSeries>,
}

impl From<MulticentricSeries> for MulticentricRecord {
    fn from(m: MulticentricSeries) -> Self {
        MulticentricRecord {
            polynomial: m.polynomial.record(),
            branches: m.branches,
        }
    }
}

impl TryFrom<MulticentricRecord> for MulticentricSeries {
    type Error = Error;

    fn try_from(r: MulticentricRecord) -> Result<Self> {
        MulticentricSeries::new(MonicPolynomial::try_from(r.polynomial)?, r.branches)
    }
}

impl MulticentricSeries {
    pub fn new(polynomial: MonicPolynomial, branches: Vec<TruncatedSeries>) -> Result<Self> {
        if branches.len() != polynomial.degree()
            || branches.iter().any(|b| b.order() != branches[0].order())
        {
            return Err(Error::JetShape);
        }
        let basis = polynomial.lagrange_basis_all()?;
        Ok(MulticentricSeries {
            polynomial,
            branches,
            basis,
        })
    }

    pub fn polynomial(&self) -> &MonicPolynomial {
        &self.polynomial
    }

    pub fn branches(&self) -> &[TruncatedSeries] {
        &self.branches
    }

    pub fn branch(&self, j: usize) -> &TruncatedSeries {
        &self.branches[j]
    }

    pub fn order(&self) -> usize {
        self.branches[0].order()
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    /// `sum_j delta_j(z) f_j(p(z))` using the stored partial sums.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let w = self.polynomial.eval(z);
        self.basis
            .iter()
            .zip(&self.branches)
            .map(|(b, f)| b.eval(z) * f.eval(w))
            .sum()
    }
}

/// Same as [`MulticentricSeries::evaluate`].
pub fn evaluate_multicentric(ms: &MulticentricSeries, z: Complex64) -> Complex64 {
    ms.evaluate(z)
}

fn check_index(p: &MonicPolynomial, k: usize) -> Result<()> {
    if k >= p.degree() {
        Err(Error::IndexOutOfRange {
            index: k,
            degree: p.degree(),
        })
    } else {
        Ok(())
    }
}

/// Coefficients of `f_j` from the Taylor jets by matching Taylor
/// coefficients at each center order by order.
///
/// At order `n` the unknown `a_{j,n}` enters only through
/// `p'(lambda_j)^n a_{j,n}`; everything else involves lower orders.
pub fn fj_recursion(p: &MonicPolynomial, jets: &JetSpec, order: usize) -> Result<MulticentricSeries> {
    p.require_simple()?;
    jets.check_against(p, order)?;
    let d = p.degree();
    let basis = p.lagrange_basis_all()?;
    let mut dpow = Vec::with_capacity(d);
    // delta_taylor[j][k][r]: r-th Taylor coefficient of delta_k at lambda_j.
    let mut delta_taylor = Vec::with_capacity(d);
    // bmat[j][m][l] = [t^m] p(lambda_j + t)^l.
    let mut bmat = Vec::with_capacity(d);
    for (j, &lj) in p.roots().iter().enumerate() {
        let dl = p.derivative_at_root(j);
        if dl.norm() < BRANCH_POINT_TOL {
            return Err(Error::BranchPoint {
                index: j,
                derivative: dl.norm(),
            });
        }
        dpow.push(dl);
        delta_taylor.push(basis.iter().map(|b| b.taylor_at(lj)).collect::<Vec<_>>());
        let mut shifted = p.as_poly().taylor_at(lj);
        shifted[0] = ZERO;
        let pj = TruncatedSeries::new(shifted).with_order(order);
        let mut power = TruncatedSeries::constant(ONE, order);
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(order + 1);
        for _ in 0..=order {
            cols.push(power.coeffs.clone());
            power = &power * &pj;
        }
        // Transpose into [m][l].
        bmat.push(
            (0..=order)
                .map(|m| (0..=order).map(|l| cols[l][m]).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        );
    }

    let mut a = vec![vec![ZERO; order + 1]; d];
    for n in 0..=order {
        for j in 0..d {
            let mut rhs = jets.taylor(j)[n];
            let lo = (n + 1).saturating_sub(d);
            for k in 0..d {
                for m in lo..n {
                    let r = n - m;
                    let dk = delta_taylor[j][k].get(r).copied().unwrap_or(ZERO);
                    if dk == ZERO {
                        continue;
                    }
                    let inner: Complex64 = (0..=m).map(|l| bmat[j][m][l] * a[k][l]).sum();
                    rhs -= dk * inner;
                }
            }
            for l in 0..n {
                rhs -= bmat[j][n][l] * a[j][l];
            }
            a[j][n] = rhs / dpow[j].powu(n as u32);
        }
    }
    MulticentricSeries::new(p.clone(), a.into_iter().map(TruncatedSeries::new).collect())
}

/// Coefficients of `f_j(w) = sum_l delta_l(lambda_j, w) phi(zeta_l(w))`.
pub fn fj_interpolation(
    p: &MonicPolynomial,
    jets: &JetSpec,
    order: usize,
) -> Result<MulticentricSeries> {
    p.require_simple()?;
    jets.check_against(p, order)?;
    let d = p.degree();
    let mut zetas = Vec::with_capacity(d);
    let mut phi_on_branch = Vec::with_capacity(d);
    for l in 0..d {
        let zeta = root_branch(p, l, order + 1)?;
        let mut h = zeta.with_order(order);
        h.coeffs[0] = ZERO;
        let local = TruncatedSeries::new(jets.taylor(l)[..=order].to_vec());
        phi_on_branch.push(local.compose(&h));
        zetas.push(zeta);
    }
    let mut branches = Vec::with_capacity(d);
    for j in 0..d {
        let mut f = TruncatedSeries::zero(order);
        for l in 0..d {
            let delta = delta_from_branch(p, &zetas[l], l, j, order)?;
            f = &f + &(&delta * &phi_on_branch[l]);
        }
        branches.push(f);
    }
    MulticentricSeries::new(p.clone(), branches)
}
