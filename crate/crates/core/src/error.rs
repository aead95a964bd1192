use alloc::string::String;

use crate::scalar::Backend;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix rows have unequal lengths")]
    RaggedRows,
    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,
    #[error("matrix is singular")]
    Singular,
    #[error("dimension {dim} exceeds the bound {bound}")]
    DimensionTooLarge { dim: usize, bound: usize },
    #[error("operation requires the exact backend, got {0}")]
    RequiresExact(Backend),
    #[error("operation requires the f64 backend, got {0}")]
    RequiresFloat(Backend),
    #[error("no convergence: {0}")]
    NoConvergence(&'static str),
    #[error("no group inverse: index is {index}")]
    NoGroupInverse { index: usize },
    #[error("hypotheses of family {family} violated: {failed}")]
    HypothesisViolated { family: &'static str, failed: String },
    #[error("I - ac is singular")]
    SingularAC,
    #[error("lambda must be nonzero")]
    ZeroLambda,
    #[error("could not generate a {family} instance in {attempts} attempts")]
    GenerationFailed { family: &'static str, attempts: u32 },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(&'static str),
    #[error("input is not a Drazin inverse of the stated matrix: {0}")]
    InvalidInput(&'static str),
    #[error("transfer formula disagrees with the direct computation: {0}")]
    FormulaMismatch(&'static str),
    #[error("tolerances must be finite and strictly positive in float mode")]
    InvalidTolerance,
}
