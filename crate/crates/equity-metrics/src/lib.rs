//! Equity measurement over finite dialogue distributions.
//!
//! The central quantity is the parity gap: the absolute difference between
//! the conditional expectations of a scoring function across the two values
//! of a protected attribute. A distribution is an equitable goal when it is
//! balanced and the gap vanishes. Test divergence compares a learned policy
//! against such a goal and comes in three forms: exact enumeration
//! ([`td_exact`]), a seeded Monte-Carlo estimator with a Hoeffding interval
//! ([`td_monte_carlo`]), and the per-sample empirical form ([`td_empirical`]).
//!
//! All functions are pure over immutable inputs with a fixed summation order
//! inside each call, so concurrent invocation is safe and reproducible.

mod classifier;
mod divergence;
mod error;
pub mod io;
mod parity;
mod score;

pub use classifier::{
    accuracy_parity_gap, demographic_parity_gap, ClassifierDataset, ClassifierRow,
};
pub use divergence::{
    hoeffding_half_width, td_empirical, td_exact, td_monte_carlo, InnerMode, TdEstimate,
};
pub use error::{EquityError, Result};
pub use parity::{
    is_equitable_goal, multi_parity_report, parity_gap, AttributeParity, EquitableGoalCheck,
    MultiParityReport, ParityReport, BALANCE_TOLERANCE,
};
pub use score::{identifier_score, tokenize, IdentifierFunction, TestFunction};
