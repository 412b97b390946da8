use thiserror::Error;

/// Errors produced by the decomposition library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree {n} outside supported range {min}..={max} for {what}")]
    DegreeOutOfRange {
        what: &'static str,
        n: usize,
        min: usize,
        max: usize,
    },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition {parts:?} of {n}")]
    InvalidPartition { parts: Vec<usize>, n: usize },

    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: String, got: String },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not unitary: max |A^dagger A - I| = {residual:.3e} > {tol:.3e}")]
    NotUnitary { residual: f64, tol: f64 },

    #[error(
        "matrix is not in XU(n): unitarity residual {unitarity:.3e}, \
         max line-sum deviation {line_sum:.3e} (tolerance {tol:.3e})"
    )]
    NotXu {
        unitarity: f64,
        line_sum: f64,
        tol: f64,
    },

    #[error("strategy {strategy} requires n >= {min}, got n = {n}")]
    StrategyDegree {
        strategy: &'static str,
        n: usize,
        min: usize,
    },

    #[error("irrep {index}: {reason}")]
    BadIrrepUnitary { index: usize, reason: String },

    #[error("irrep identification failed: {0}")]
    IrrepIdentification(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
