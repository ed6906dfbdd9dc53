//! Square complex matrices for the operator calculus.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::fmt_g;

/// Relative stopping tolerance of the spectral-norm power iteration.
pub const NORM2_TOL: f64 = 1e-10;
const NORM2_RESTARTS: u64 = 5;
const NORM2_MAX_ITERS: usize = 20_000;

/// Square matrix with finite complex entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "MatrixRecord", try_from = "MatrixRecord")]
pub struct DenseComplexMatrix(DMatrix<Complex64>);

/// JSON form `{"n": k, "entries": [[re,im], ...]}` in row-major order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub n: usize,
    #[serde(with = "crate::format::complex_vec")]
    pub entries: Vec<Complex64>,
}

impl From<DenseComplexMatrix> for MatrixRecord {
    fn from(m: DenseComplexMatrix) -> Self {
        let n = m.n();
        MatrixRecord {
            n,
            entries: (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| m.0[(i, j)]).collect(),
        }
    }
}

impl TryFrom<MatrixRecord> for DenseComplexMatrix {
    type Error = Error;

    fn try_from(r: MatrixRecord) -> Result<Self> {
        DenseComplexMatrix::from_row_major(r.n, &r.entries)
    }
}

impl DenseComplexMatrix {
    pub fn from_row_major(n: usize, entries: &[Complex64]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n}x{n} matrix",
                entries.len()
            )));
        }
        Self::from_dmatrix(DMatrix::from_row_slice(n, n, entries))
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let entries: Vec<Complex64> = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)))
            .collect();
        Self::from_row_major(n, &entries)
    }

    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("matrix entries"));
        }
        Ok(DenseComplexMatrix(m))
    }

    pub fn identity(n: usize) -> Self {
        DenseComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn zeros(n: usize) -> Self {
        DenseComplexMatrix(DMatrix::zeros(n, n))
    }

    pub fn diag(values: &[Complex64]) -> Self {
        DenseComplexMatrix(DMatrix::from_diagonal(&DVector::from_row_slice(values)))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn scale(&self, s: Complex64) -> Self {
        DenseComplexMatrix(&self.0 * s)
    }

    pub fn adjoint(&self) -> Self {
        DenseComplexMatrix(self.0.adjoint())
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    pub fn frobenius(&self) -> f64 {
        self.0.norm()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, mut k: usize) -> Self {
        let mut result = Self::identity(self.n());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `self + c I`.
    pub fn add_identity(&self, c: Complex64) -> Self {
        let mut m = self.0.clone();
        for i in 0..m.nrows() {
            m[(i, i)] += c;
        }
        DenseComplexMatrix(m)
    }

    /// Spectral norm by power iteration on `A^H A`.
    ///
    /// Five deterministic random starts; each stops when the Rayleigh
    /// estimate changes by less than [`NORM2_TOL`] relative.
    pub fn norm2(&self) -> f64 {
        let n = self.n();
        if n == 0 || self.max_abs() == 0.0 {
            return 0.0;
        }
        let gram = self.0.adjoint() * &self.0;
        let mut best: f64 = 0.0;
        for seed in 0..NORM2_RESTARTS {
            let mut rng = ChaCha8Rng::seed_from_u64(0x6d75_6c74 + seed);
            let mut v = DVector::from_fn(n, |_, _| {
                Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
            });
            v /= Complex64::new(v.norm(), 0.0);
            let mut estimate = 0.0;
            for _ in 0..NORM2_MAX_ITERS {
                let w = &gram * &v;
                let lambda = w.norm();
                if lambda == 0.0 {
                    break;
                }
                v = w / Complex64::new(lambda, 0.0);
                let done = (lambda - estimate).abs() <= NORM2_TOL * lambda;
                estimate = lambda;
                if done {
                    break;
                }
            }
            best = best.max(estimate.sqrt());
        }
        best
    }

    /// Whitespace-separated text, one row per line, `re im` per entry.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n() {
            let row: Vec<String> = (0..self.n())
                .map(|j| {
                    let z = self.0[(i, j)];
                    format!("{} {}", fmt_g(z.re), fmt_g(z.im))
                })
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        out
    }

    /// Parses [`Self::to_text`] output: `2 n^2` floats in row-major order.
    pub fn from_text(text: &str) -> Result<Self> {
        let nums = text
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        if nums.len() % 2 != 0 {
            return Err(Error::Parse("odd number of floats".into()));
        }
        let count = nums.len() / 2;
        let n = (count as f64).sqrt().round() as usize;
        if n * n != count || n == 0 {
            return Err(Error::Parse(format!("{count} entries do not form a square matrix")));
        }
        let entries: Vec<Complex64> = nums.chunks(2).map(|c| Complex64::new(c[0], c[1])).collect();
        Self::from_row_major(n, &entries)
    }
}

impl Add for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;

    fn add(self, rhs: &DenseComplexMatrix) -> DenseComplexMatrix {
        DenseComplexMatrix(&self.0 + &rhs.0)
    }
}

impl Sub for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;

    fn sub(self, rhs: &DenseComplexMatrix) -> DenseComplexMatrix {
        DenseComplexMatrix(&self.0 - &rhs.0)
    }
}

impl Mul for &DenseComplexMatrix {
    type Output = DenseComplexMatrix;

    fn mul(self, rhs: &DenseComplexMatrix) -> DenseComplexMatrix {
        DenseComplexMatrix(&self.0 * &rhs.0)
    }
}
