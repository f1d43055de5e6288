use thiserror::Error;

use crate::exact::{Rational, SolutionKind};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polytope is unbounded along direction {direction:?}")]
    Unbounded { direction: Vec<Rational> },

    #[error("polytope is empty: no feasible vertex")]
    Empty,

    #[error("circle direction {xi:?} is not generic: edge {edge:?} at vertex {vertex} pairs to zero")]
    NonGeneric {
        xi: Vec<i64>,
        vertex: String,
        edge: Vec<i64>,
    },

    #[error("moment map is not normalized (max H = {max}); call normalize_moment first")]
    NotNormalized { max: Rational },

    #[error("classes live on different fixed-point sets")]
    MismatchedPointSets,

    #[error("class degree mismatch: u^{left} vs u^{right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("canonical class at {base}: {reason}")]
    Canonical { base: String, reason: String },

    #[error("canonical system at {base} has {kind:?} solution, expected unique")]
    CanonicalNotUnique { base: String, kind: SolutionKind },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
}
