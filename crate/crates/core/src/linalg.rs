//! Small dense complex linear-algebra helpers on top of `nalgebra`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) type CMatrix = DMatrix<Complex64>;

/// Complex Schur form `A = Q T Q^H` with `T` strictly upper triangular.
///
/// nalgebra may leave 2x2 diagonal blocks in `T`; those are split here with
/// a unitary rotation built from one eigenvector of the block.
pub(crate) fn complex_schur(a: &CMatrix) -> Result<(CMatrix, CMatrix)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::NotSquare {
            rows: n,
            cols: a.ncols(),
        });
    }
    if a.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite("matrix entries"));
    }
    if n == 0 {
        return Ok((CMatrix::zeros(0, 0), CMatrix::zeros(0, 0)));
    }
    let schur = nalgebra::linalg::Schur::try_new(a.clone(), f64::EPSILON, 1000 * n.max(4))
        .ok_or_else(|| Error::RootFinding("Schur iteration did not converge".into()))?;
    let (mut q, mut t) = schur.unpack();

    let scale = t.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let mut m = 0;
    while m + 1 < n {
        if t[(m + 1, m)].norm() <= f64::EPSILON * scale {
            t[(m + 1, m)] = Complex64::new(0.0, 0.0);
            m += 1;
            continue;
        }
        // Eigenvalue of the 2x2 block and a unit eigenvector (x, y).
        let (a11, a12, a21, a22) = (t[(m, m)], t[(m, m + 1)], t[(m + 1, m)], t[(m + 1, m + 1)]);
        let half_tr = (a11 + a22) * 0.5;
        let disc = ((a11 - a22) * 0.5).powi(2) + a12 * a21;
        let mu = half_tr + disc.sqrt();
        let (x, y) = if (mu - a22).norm() >= a21.norm() {
            (mu - a22, a21)
        } else {
            (a12, mu - a11)
        };
        let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
        let (c, s) = (x / r, y / r);
        // G = [[c, -s*], [s, c*]] is unitary with first column (c, s).
        let g = [[c, -s.conj()], [s, c.conj()]];
        // T <- G^H T on rows m, m+1.
        for col in 0..n {
            let (u, v) = (t[(m, col)], t[(m + 1, col)]);
            t[(m, col)] = g[0][0].conj() * u + g[1][0].conj() * v;
            t[(m + 1, col)] = g[0][1].conj() * u + g[1][1].conj() * v;
        }
        // T <- T G and Q <- Q G on columns m, m+1.
        for mat in [&mut t, &mut q] {
            for row in 0..n {
                let (u, v) = (mat[(row, m)], mat[(row, m + 1)]);
                mat[(row, m)] = u * g[0][0] + v * g[1][0];
                mat[(row, m + 1)] = u * g[0][1] + v * g[1][1];
            }
        }
        t[(m + 1, m)] = Complex64::new(0.0, 0.0);
        m += 1;
    }
    Ok((q, t))
}

pub(crate) fn eigenvalues(a: &CMatrix) -> Result<Vec<Complex64>> {
    let (_, t) = complex_schur(a)?;
    Ok((0..t.nrows()).map(|i| t[(i, i)]).collect())
}

/// Eigenvalues and eigenvectors (as columns) of a general complex matrix.
///
/// Eigenvectors come from back substitution on the triangular Schur factor.
/// Repeated eigenvalues produce a (numerically) singular vector matrix; the
/// caller is expected to check its conditioning.
pub(crate) fn eigen_decomposition(a: &CMatrix) -> Result<(Vec<Complex64>, CMatrix)> {
    let (q, t) = complex_schur(a)?;
    let n = t.nrows();
    let scale = t.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let tiny = f64::EPSILON * scale;
    let mut y = CMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        y[(k, k)] = Complex64::new(1.0, 0.0);
        for i in (0..k).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in (i + 1)..=k {
                acc += t[(i, j)] * y[(j, k)];
            }
            let mut denom = t[(i, i)] - lambda;
            if denom.norm() < tiny {
                denom = Complex64::new(tiny, 0.0);
            }
            y[(i, k)] = -acc / denom;
        }
        let norm = y.column(k).norm();
        if norm.is_finite() && norm > 0.0 {
            let mut col = y.column_mut(k);
            col /= Complex64::new(norm, 0.0);
        }
    }
    let values = (0..n).map(|i| t[(i, i)]).collect();
    Ok((values, q * y))
}

pub(crate) fn inverse(a: &CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::NotSquare {
            rows: n,
            cols: a.ncols(),
        });
    }
    let lu = a.clone().lu();
    let inv = lu
        .try_inverse()
        .ok_or_else(|| Error::Singular("LU factorization has a zero pivot".into()))?;
    if inv.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Singular("inverse has non-finite entries".into()));
    }
    Ok(inv)
}
