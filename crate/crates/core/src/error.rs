use thiserror::Error;

use crate::lie_core::GroupSpec;
use crate::rep_algebra::Witness;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("group mismatch: {left} vs {right}")]
    GroupMismatch { left: GroupSpec, right: GroupSpec },

    #[error("matrix must be square with positive size, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("matrix is singular or numerically singular ({context})")]
    Singular { context: &'static str },

    #[error("matrix is not a member of {spec}: residual {residual:e}")]
    NotInGroup { spec: GroupSpec, residual: f64 },

    #[error("matrix is not in the Lie algebra of {spec}: residual {residual:e}")]
    NotInAlgebra { spec: GroupSpec, residual: f64 },

    #[error("exponential argument too large: norm {norm:e} exceeds {limit:e}")]
    ExpOverflow { norm: f64, limit: f64 },

    #[error("matrix logarithm failed: {0}")]
    Logarithm(String),

    #[error("finite-difference step produced a non-finite quotient (h = {step:e})")]
    StepSize { step: f64 },

    #[error("invalid group specification: {0}")]
    InvalidGroup(String),

    #[error("invalid representation descriptor: {0}")]
    Descriptor(String),

    #[error("representation rejected: {reason} (residual {residual:e})")]
    RepresentationRejected {
        reason: String,
        residual: f64,
        witness: Option<Box<Witness>>,
    },

    #[error("unknown catalog entry `{0}`")]
    UnknownRepresentation(String),

    #[error("unknown check suite `{0}`")]
    UnknownSuite(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
