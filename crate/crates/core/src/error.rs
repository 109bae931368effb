use thiserror::Error;

use crate::centralizer::OrbitType;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input is not a unit element (norm {norm}, tolerance {tolerance})")]
    NonUnitInput { norm: f64, tolerance: f64 },

    #[error("tuple is not generic (orbit type: {0})")]
    NotGeneric(OrbitType),

    #[error("conjugation witness failed verification (residual {residual:e}, limit {limit:e})")]
    WitnessVerificationFailed { residual: f64, limit: f64 },

    #[error("chart coordinates out of range: {0}")]
    OutOfChart(String),

    #[error("graph is disconnected: {0}")]
    Disconnected(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("rank mismatch: graph has cycle rank {expected}, target has {got} elements")]
    RankMismatch { expected: usize, got: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("unknown stratum family {0:?}")]
    UnknownStratum(String),

    #[error("probe path left the generic stratum at step {step} (margin {margin:e})")]
    PathLeftGenericStratum { step: usize, margin: f64 },

    #[error("no generic tuple found for k <= {k_max}")]
    NotFound { k_max: usize },

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
