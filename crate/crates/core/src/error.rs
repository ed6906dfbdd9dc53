use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("polynomial needs at least one root")]
    EmptyRoots,

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("roots are not simple (minimum pairwise distance {min_distance:e})")]
    RepeatedRoots { min_distance: f64 },

    #[error("operation requires degree >= {required}, got {degree}")]
    DegreeTooSmall { degree: usize, required: usize },

    #[error("root finder failed: {0}")]
    RootFinding(String),

    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("series constant term {0:e} is too small to invert")]
    ZeroConstantTerm(f64),

    #[error("branch point at center {index}: |p'| = {derivative:e}")]
    BranchPoint { index: usize, derivative: f64 },

    #[error("jets must have one entry per center with equal lengths")]
    JetShape,

    #[error("level {level} is above the field maximum on the grid, no contour")]
    EmptyContour { level: f64 },

    #[error("a sublevel component touches the grid boundary; enlarge the box")]
    BoxTooSmall,

    #[error("no critical point lies outside the sublevel set at level {level}")]
    NoOutsideCriticalPoint { level: f64 },

    #[error("w = {0} is (numerically) a critical value of p")]
    CriticalValue(String),

    #[error("no component lies strictly in the right half-plane")]
    NoRightComponent,

    #[error("no feasible separation level found: {0}")]
    NoFeasibleLevel(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular: {0}")]
    Singular(String),

    #[error("eigenvector basis is ill-conditioned (condition number {0:e})")]
    IllConditioned(f64),

    #[error("power schedule exhausted after {steps} doublings (last level {last_level})")]
    PowerScheduleExhausted { steps: usize, last_level: f64 },

    #[error("center {index} at {center} is not inside any sublevel component")]
    CenterOutsideComponents { index: usize, center: String },

    #[error("series tail is not decaying (last term norm {0:e})")]
    NonConvergentTail(f64),

    #[error("quadrature did not converge: doubling nodes changed the result by {0:e}")]
    QuadratureNotConverged(f64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
