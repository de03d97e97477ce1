use dist_core::DistError;
use equity_metrics::EquityError;
use thiserror::Error;

/// The named assumptions of the learning bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assumption {
    /// A1: equal dialogue-given-context conditionals.
    ContextAwareness,
    /// A2: equal context-given-attribute conditionals.
    ContextPreservation,
    /// The goal must assign both attribute values probability 1/2.
    Balance,
}

impl std::fmt::Display for Assumption {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Assumption::ContextAwareness => write!(f, "A1 (context-awareness)"),
            Assumption::ContextPreservation => write!(f, "A2 (context-preservation)"),
            Assumption::Balance => write!(f, "balance"),
        }
    }
}

#[derive(Debug, Error)]
pub enum TheoryError {
    #[error(transparent)]
    Dist(#[from] DistError),

    #[error(transparent)]
    Equity(#[from] EquityError),

    #[error("goal is not equitable: balanced={balanced}, parity gap={parity_gap}")]
    NotEquitableGoal { balanced: bool, parity_gap: f64 },

    #[error("assumption {assumption} violated: max deviation {max_deviation}")]
    AssumptionViolation {
        assumption: Assumption,
        max_deviation: f64,
    },

    #[error("the two distributions share no positive-probability context")]
    EmptySharedSupport,

    #[error("parameter {name} = {value} out of range")]
    Domain { name: &'static str, value: f64 },
}

pub type Result<T> = std::result::Result<T, TheoryError>;
