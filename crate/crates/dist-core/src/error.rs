use thiserror::Error;

/// Errors raised while constructing or evaluating finite-support distributions.
#[derive(Debug, Error)]
pub enum DistError {
    #[error("{what}: probabilities sum to {sum}, expected 1 within {tolerance}")]
    NotNormalized {
        what: String,
        sum: f64,
        tolerance: f64,
    },

    #[error("{what}: probability {value} outside [0, 1]")]
    InvalidProbability { what: String, value: f64 },

    #[error("context {context:?} has positive probability but no dialogue conditional")]
    MissingConditional { context: String },

    #[error("context {context:?} listed more than once")]
    DuplicateContext { context: String },

    #[error("policy {policy:?} has no distribution for context {context:?}")]
    MissingContext { policy: String, context: String },

    #[error("attribute kernel {attribute:?} does not cover context {context:?}")]
    KernelCoverage { attribute: String, context: String },

    #[error("hypothesis space must contain at least one policy")]
    EmptyHypothesisSpace,

    #[error("duplicate policy id {id:?} in hypothesis space")]
    DuplicatePolicyId { id: String },

    #[error("sample size must be at least 1")]
    EmptySample,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, DistError>;
