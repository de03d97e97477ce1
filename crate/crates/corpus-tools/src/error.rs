use equity_metrics::EquityError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: duplicate record id {id:?}")]
    DuplicateId { id: String, line: usize },

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("attribute {attribute:?} has no context group labeled {value}")]
    MissingLabelValue { attribute: String, value: u8 },

    #[error("attribute {attribute:?} has no labeled context group")]
    EmptyAttribute { attribute: String },

    #[error(
        "corpora are not aligned: {missing_in_candidate:?} missing from candidate, \
         {missing_in_reference:?} missing from reference"
    )]
    Alignment {
        missing_in_candidate: Vec<String>,
        missing_in_reference: Vec<String>,
    },

    #[error(transparent)]
    Equity(#[from] EquityError),
}

pub type Result<T> = std::result::Result<T, CorpusError>;
