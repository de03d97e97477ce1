//! Learning-theoretic verification for equitable dialogue distributions.
//!
//! Builds on the exact enumeration layer to check, on concrete finite
//! instances, the two structural assumptions (shared dialogue-given-context
//! and context-given-attribute conditionals), the parity-gap bound
//! `gap <= 2 * TD`, the divergence transfer inequality
//! `TD_goal <= TD_human / (2 beta)`, and the finite-hypothesis sample bound
//! with its data-efficiency term. Randomized campaigns exercise each
//! inequality across thousands of generated instances; the trial harness
//! measures how often the probabilistic bound fails over repeated samples.
//!
//! Every inequality comparison uses [`COMPARISON_TOLERANCE`] to absorb
//! enumeration rounding. Campaigns and the harness are deterministic given
//! their seed; trials are independent with per-trial seeds derived as
//! [`trial_seed`].

mod bound;
mod campaign;
mod construct;
mod context;
mod efficiency;
mod erm;
mod error;
pub mod generate;
mod verify;

pub use bound::{
    beta, efficiency_term, efficiency_term_with_base, thm2_bound, BoundReport,
    COMPARISON_TOLERANCE,
};
pub use campaign::{
    finale_campaign, thm1_campaign, thm2_campaign, trial_harness, trial_seed, violation_budget,
    CampaignConfig, CampaignReport, Thm2CampaignReport, Thm2Config, TrialSummary,
};
pub use construct::{construct_equitable_goal, ConstructedGoal};
pub use context::{check_context_aware, check_context_preserving, check_context_preserving_kernels, ContextCheck};
pub use efficiency::{augmentation_efficiency, table1_consistency, AugmentationEfficiencyReport};
pub use erm::{erm_learn, ErmSelection};
pub use error::{Assumption, Result, TheoryError};
pub use verify::{verify_finale, verify_finale_kernels, verify_thm1, FinaleVerdict, Thm1Verdict};
