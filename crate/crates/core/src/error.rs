//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A measure spec violated one or more of its invariants.
    #[error("invalid measure: {}", .0.join("; "))]
    InvalidMeasure(Vec<String>),

    /// Operation requires a measure variant that was not supplied.
    #[error("{op} is not supported for {variant} measures")]
    UnsupportedVariant {
        op: &'static str,
        variant: &'static str,
    },

    /// Evaluation point lies outside the open unit disc.
    #[error("point {re}{im:+}i lies outside the open unit disc")]
    PointOutsideDisc { re: f64, im: f64 },

    /// A matrix declared Hermitian failed the symmetry check.
    #[error("matrix is not Hermitian at entry ({row}, {col})")]
    NotHermitian { row: usize, col: usize },

    /// A coefficient matrix failed the positivity invariant.
    #[error(
        "matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e} \
         below -tol*trace)"
    )]
    NotPsd { min_eigenvalue: f64 },

    /// Two operands disagree on truncation size.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// Digit-set enumeration would overflow 64-bit integers.
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),

    /// Operation requires a probability measure.
    #[error("measure is not a probability measure (total mass {mass})")]
    NotProbability { mass: f64 },

    /// The combination of coefficient matrix and measure lands outside the
    /// two regimes in which the windowed product CMC is meaningful:
    /// diagonal C with any probability measure, or arbitrary bounded C with
    /// a measure of essentially bounded density.
    #[error("unsupported regime: {0}")]
    UnsupportedRegime(String),

    /// The transpose criterion requires C to be a projection.
    #[error(
        "coefficient matrix is not a projection (residual {residual:.3e}); \
         the transpose criterion only applies to projections"
    )]
    NotProjection { residual: f64 },

    /// Constructive failure: the difference set blocks every frequency.
    #[error("no admissible frequency in [1, {bound}]: the difference set covers the whole window")]
    NoAdmissibleFrequency { bound: u64 },

    /// A certified truncation would need more terms than the evaluator allows.
    #[error("requested tolerance {tol:.3e} needs more than {cap} terms at this point")]
    TruncationTooLarge { tol: f64, cap: usize },

    /// Malformed textual input (complex literals, matrix files).
    #[error("parse error: {0}")]
    Parse(String),
}
