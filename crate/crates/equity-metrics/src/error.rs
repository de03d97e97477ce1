use dist_core::DistError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EquityError {
    #[error(transparent)]
    Dist(#[from] DistError),

    /// The parity gap is undefined when one attribute value has probability 0.
    #[error("attribute {attribute:?}: Pr(A={value}) = 0, parity gap undefined")]
    DegenerateAttribute { attribute: String, value: u8 },

    #[error("score {name:?} returns {value} for dialogue {dialogue:?}, outside [0, 1]")]
    ScoreOutOfRange {
        name: String,
        dialogue: String,
        value: f64,
    },

    #[error("score {name:?} has no entry for dialogue {dialogue:?}")]
    MissingScoreEntry { name: String, dialogue: String },

    #[error("attribute value {value} is not 0 or 1")]
    InvalidAttributeValue { value: u8 },

    #[error("no rows with attribute value {attribute_value} in classifier dataset")]
    EmptyGroup { attribute_value: u8 },

    #[error("parameter {name} = {value} out of range")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("sample record carries no value for attribute {attribute:?}")]
    MissingSampleAttribute { attribute: String },

    #[error("no score configured for attribute {attribute:?}")]
    MissingScore { attribute: String },

    #[error("malformed score file: {message}")]
    InvalidScoreFile { message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, EquityError>;
