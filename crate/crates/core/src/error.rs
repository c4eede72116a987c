//! Error type shared across the engine.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unknown block index {0}")]
    UnknownIndex(String),

    #[error("empty window")]
    EmptyWindow,

    #[error("unsupported tail rule: {0}")]
    UnsupportedTail(String),

    #[error("fusion rule missing for pair ({0}, {1})")]
    MissingFusion(String, String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("model inconsistency: {0}")]
    ModelInconsistency(String),

    #[error("degree insufficient: {0}")]
    DegreeInsufficient(String),

    #[error("{0}")]
    Parse(String),

    #[error("cannot parse scalar: {0}")]
    ParseScalar(String),

    #[error("cannot parse model file: {0}")]
    ParseModel(String),

    #[error("unsupported symbol for this model kind: {0}")]
    UnsupportedSymbol(String),
}
