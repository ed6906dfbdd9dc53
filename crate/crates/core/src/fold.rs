//! Roots-of-unity decomposition `g(w) = sum_{k<n} w^k g_k(w^n)` and the
//! folded multicentric representation in the variable `u = p(z)^n`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::MonicPolynomial;
use crate::series::{MulticentricSeries, TruncatedSeries};

/// Stride filter: `g_k` collects `alpha_k, alpha_{n+k}, alpha_{2n+k}, ...`.
///
/// Each `g_k` is a series in `u = w^n` of order `floor((N-k)/n)`; when
/// `k > N` the part is the zero series of order 0.
pub fn split_coefficients(g: &TruncatedSeries, n: usize) -> Result<Vec<TruncatedSeries>> {
    if n == 0 {
        return Err(Error::InvalidParameter("fold index n must be >= 1".into()));
    }
    let c = g.coeffs();
    Ok((0..n)
        .map(|k| TruncatedSeries::new(c.iter().skip(k).step_by(n).copied().collect()))
        .collect())
}

/// `w^k g_k(w^n)` as the average `(1/n) sum_m e^{-2 pi i k m/n} g(e^{2 pi i m/n} w)`.
pub fn split_pointwise<G>(g: G, w: Complex64, n: usize, k: usize) -> Complex64
where
    G: Fn(Complex64) -> Complex64,
{
    let n_f = n as f64;
    (0..n)
        .map(|m| {
            let angle = 2.0 * PI * m as f64 / n_f;
            Complex64::from_polar(1.0, -angle * k as f64) * g(Complex64::from_polar(1.0, angle) * w)
        })
        .sum::<Complex64>()
        / n_f
}

/// Inverse of [`split_coefficients`]: interleaves the parts back into a series in `w`.
pub fn reassemble(parts: &[TruncatedSeries], order: usize) -> TruncatedSeries {
    let n = parts.len();
    let mut c = vec![Complex64::new(0.0, 0.0); order + 1];
    for (k, part) in parts.iter().enumerate() {
        for (m, &a) in part.coeffs().iter().enumerate() {
            let idx = k + m * n;
            if idx <= order {
                c[idx] = a;
            }
        }
    }
    TruncatedSeries::new(c)
}

/// `phi(z) = sum_j delta_j(z) sum_{k<n} w^k f_{j,k}(w^n)` with `w = p(z)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FoldedSeries {
    n: usize,
    /// `branches[j][k]` is `f_{j,k}` as a series in `u = w^n`.
    branches: Vec<Vec<TruncatedSeries>>,
    #[serde(skip)]
    source: MulticentricSeries,
}

impl FoldedSeries {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn branches(&self) -> &[Vec<TruncatedSeries>] {
        &self.branches
    }

    pub fn part(&self, j: usize, k: usize) -> &TruncatedSeries {
        &self.branches[j][k]
    }

    pub fn polynomial(&self) -> &MonicPolynomial {
        self.source.polynomial()
    }

    pub fn source(&self) -> &MulticentricSeries {
        &self.source
    }

    /// Order in `w` of the series that was folded.
    pub fn source_order(&self) -> usize {
        self.source.order()
    }

    /// `F_j(w) = sum_k w^k f_{j,k}(w^n)` as a series in `w`.
    pub fn reassembled(&self, j: usize) -> TruncatedSeries {
        reassemble(&self.branches[j], self.source_order())
    }

    /// `sum_j delta_j(z) sum_k w^k f_{j,k}(w^n)`.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        let w = self.polynomial().eval(z);
        let u = w.powu(self.n as u32);
        self.source
            .basis()
            .iter()
            .zip(&self.branches)
            .map(|(b, parts)| {
                let mut wk = Complex64::new(1.0, 0.0);
                let mut inner = Complex64::new(0.0, 0.0);
                for part in parts {
                    inner += wk * part.eval(u);
                    wk *= w;
                }
                b.eval(z) * inner
            })
            .sum()
    }
}

/// Applies [`split_coefficients`] to every `f_j`.
pub fn fold_multicentric(ms: &MulticentricSeries, n: usize) -> Result<FoldedSeries> {
    let branches = ms
        .branches()
        .iter()
        .map(|f| split_coefficients(f, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(FoldedSeries {
        n,
        branches,
        source: ms.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{fj_recursion, JetSpec};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_sign_split() {
        let g = TruncatedSeries::from_real(&[1.0, -0.5, 0.375, -0.3125]);
        let parts = split_coefficients(&g, 2).unwrap();
        assert_eq!(parts[0], TruncatedSeries::from_real(&[1.0, 0.375]));
        assert_eq!(parts[1], TruncatedSeries::from_real(&[-0.5, -0.3125]));
    }

    #[test]
    fn variable_split_in_three() {
        let parts = split_coefficients(&TruncatedSeries::from_real(&[0.0, 1.0]), 3).unwrap();
        assert_eq!(parts[0].coeffs(), &[c(0.0, 0.0)]);
        assert_eq!(parts[1].coeffs(), &[c(1.0, 0.0)]);
        assert_eq!(parts[2].coeffs(), &[c(0.0, 0.0)]);
    }

    #[test]
    fn identity_split_and_zero_index() {
        let g = TruncatedSeries::from_real(&[1.0, 2.0, 3.0]);
        assert_eq!(split_coefficients(&g, 1).unwrap(), vec![g.clone()]);
        assert!(split_coefficients(&g, 0).is_err());
    }

    #[test]
    fn odd_part_of_even_function_vanishes() {
        let g = |w: Complex64| w * w + 1.0;
        for w in [c(0.3, 0.1), c(-0.7, 0.4)] {
            assert!(split_pointwise(g, w, 2, 1).norm() < 1e-15);
        }
    }

    #[test]
    fn folded_quadratic_reassembles() {
        let p = MonicPolynomial::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        let jets = JetSpec::constant(&[c(1.0, 0.0), c(-1.0, 0.0)], 12).unwrap();
        let ms = fj_recursion(&p, &jets, 12).unwrap();
        for n in [1, 2, 3, 5] {
            let folded = fold_multicentric(&ms, n).unwrap();
            assert_eq!(folded.reassembled(0), *ms.branch(0));
            assert_eq!(folded.reassembled(1), *ms.branch(1));
            let z = c(0.95, 0.05);
            assert!((folded.evaluate(z) - ms.evaluate(z)).norm() < 1e-14);
        }
    }
}
