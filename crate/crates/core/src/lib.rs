//! Multicentric holomorphic calculus.
//!
//! A function `phi` holomorphic near the roots `lambda_1..lambda_d` of a
//! monic polynomial `p` is written as
//! `phi(z) = sum_j delta_j(z) f_j(p(z))`, where `delta_j` is the Lagrange
//! basis at the roots and each `f_j` is a power series in `w = p(z)`.
//! The crate provides the polynomial layer, truncated series arithmetic,
//! the roots-of-unity folding in `p(z)^n`, lemniscate geometry of
//! `{|p(z)| <= rho}`, and Riesz projections of matrices built from these
//! series.

pub mod error;
pub mod fold;
pub mod format;
pub mod lemniscate;
pub(crate) mod linalg;
pub mod matrix;
pub mod poly;
pub mod projection;
pub mod series;

pub use error::{Error, Result};
pub use fold::{FoldedSeries, split_coefficients, split_pointwise};
pub use lemniscate::{GridSpec, LemniscateAnalysis};
pub use matrix::DenseComplexMatrix;
pub use poly::{model_polynomial, CriticalPoint, MonicPolynomial, Poly, SeparationTask};
pub use projection::{Assignment, ProjectionReport};
pub use series::{JetSpec, MulticentricSeries, TruncatedSeries};

pub use num_complex::Complex64;
