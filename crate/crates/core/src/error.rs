use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("matrix is not Hermitian (asymmetry {asymmetry:.3e} exceeds {tolerance:.3e})")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("metric matrix is singular at tolerance (smallest eigenvalue {smallest:.3e})")]
    IllConditionedMetric { smallest: f64 },

    #[error("size error: {0}")]
    Size(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("group action `{0}` is not multiplicity-free")]
    NotMultiplicityFree(String),

    #[error("cluster subspaces differ across seeds after {attempts} attempts (best match {best_match:.3e})")]
    DegenerateSample { attempts: usize, best_match: f64 },

    #[error("predicted column {column} has Rayleigh quotient {value:.6e} outside every eigenvalue cluster")]
    StructuralMismatch { column: usize, value: f64 },

    #[error("cluster {cluster} holds {empirical} empirical eigenvectors but {predicted} predicted columns")]
    DegeneracyMismatch {
        cluster: usize,
        empirical: usize,
        predicted: usize,
    },

    #[error("residual undefined for a zero matrix")]
    UndefinedResidual,

    #[error("deflation exhausted the candidate basis")]
    SearchExhausted,

    #[error("candidate basis is ill-conditioned: {0}")]
    Basis(String),

    #[error("integer overflow during exact elimination")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
