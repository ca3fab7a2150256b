use thiserror::Error;

use crate::sset::SimplexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("face index {index} out of range for a simplex of dimension {dim}")]
    FaceIndex { index: usize, dim: usize },

    #[error("unknown simplex id {0:?}")]
    UnknownSimplex(SimplexId),

    #[error("invalid simplicial set: {0}")]
    InvalidComplex(String),

    #[error("invalid simplicial map: {0}")]
    InvalidMap(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("horn index {k} out of range for dimension {n}")]
    HornIndex { n: usize, k: usize },

    #[error("size limit exceeded: {size} > {limit}")]
    SizeLimit { size: usize, limit: usize },

    #[error("complex is not loop-free; use bounded hom classes instead")]
    NotLoopFree,

    #[error("complex is not a certified quasi-category")]
    NotCertified,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("construction invariant failed: {0}")]
    Invariant(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
