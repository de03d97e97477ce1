//! The finite-hypothesis learning bound: beta, the data-efficiency term, and
//! their assembly into a bound on goal test divergence.

use serde::{Deserialize, Serialize};

use dist_core::{attribute_marginal, AttributeKernel, DialoguePolicy, Sample, TabularJoint};
use equity_metrics::{td_empirical, EquityError, InnerMode, TestFunction};

use crate::error::{Result, TheoryError};

/// Comparison tolerance on every inequality check in this crate.
pub const COMPARISON_TOLERANCE: f64 = 1e-9;

/// beta = min_a Pr(A = a) under the given joint and kernel; lies in (0, 0.5].
pub fn beta(joint: &TabularJoint, kernel: &AttributeKernel) -> Result<f64> {
    let (pr0, pr1) = attribute_marginal(joint, kernel)?;
    for (value, pr) in [(0u8, pr0), (1u8, pr1)] {
        if pr <= 0.0 {
            return Err(EquityError::DegenerateAttribute {
                attribute: kernel.attribute().to_string(),
                value,
            }
            .into());
        }
    }
    Ok(pr0.min(pr1))
}

/// Data-efficiency term sqrt((log|Theta| + ln(2/delta)) / (2m)) with the
/// hypothesis-space log taken in the given base.
pub fn efficiency_term_with_base(
    hyp_size: usize,
    m: usize,
    delta: f64,
    log_base: f64,
) -> Result<f64> {
    if hyp_size < 1 {
        return Err(TheoryError::Domain {
            name: "hyp_size",
            value: hyp_size as f64,
        });
    }
    if m < 1 {
        return Err(TheoryError::Domain {
            name: "m",
            value: m as f64,
        });
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(TheoryError::Domain {
            name: "delta",
            value: delta,
        });
    }
    if !(log_base > 1.0) {
        return Err(TheoryError::Domain {
            name: "log_base",
            value: log_base,
        });
    }
    let hyp_log = (hyp_size as f64).ln() / log_base.ln();
    Ok(((hyp_log + (2.0 / delta).ln()) / (2.0 * m as f64)).sqrt())
}

/// Data-efficiency term with the hypothesis-space log taken as the natural
/// log, matching the ln(2/delta) companion term.
pub fn efficiency_term(hyp_size: usize, m: usize, delta: f64) -> Result<f64> {
    efficiency_term_with_base(hyp_size, m, delta, std::f64::consts::E)
}

/// One evaluation of the learning bound: 2*beta*TD_goal is bounded by the
/// empirical divergence plus the data-efficiency term, so TD_goal itself is
/// bounded by their sum over 2*beta.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub empirical_td: f64,
    pub efficiency_term: f64,
    pub beta: f64,
    pub delta: f64,
    pub m: usize,
    pub hyp_size: usize,
    pub bound_on_td_goal: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_td_goal: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub holds: Option<bool>,
}

impl BoundReport {
    /// Records the exactly enumerated goal divergence and whether the bound
    /// holds for it within [`COMPARISON_TOLERANCE`].
    pub fn with_exact_td(mut self, exact_td_goal: f64) -> Self {
        self.holds = Some(exact_td_goal <= self.bound_on_td_goal + COMPARISON_TOLERANCE);
        self.exact_td_goal = Some(exact_td_goal);
        self
    }
}

/// Assembles a [`BoundReport`] for one policy from a drawn human sample.
///
/// The empirical term uses the expected-inner mode, which needs no extra
/// randomness; beta comes from the human distribution.
pub fn thm2_bound(
    sample: &Sample,
    policy: &DialoguePolicy,
    test: &TestFunction,
    hyp_size: usize,
    delta: f64,
    human: &TabularJoint,
    kernel: &AttributeKernel,
) -> Result<BoundReport> {
    let beta = beta(human, kernel)?;
    let efficiency = efficiency_term(hyp_size, sample.len(), delta)?;
    let empirical_td = td_empirical(
        sample,
        policy,
        test,
        kernel.attribute(),
        InnerMode::ExpectedInner,
        sample.seed(),
    )?;
    Ok(BoundReport {
        empirical_td,
        efficiency_term: efficiency,
        beta,
        delta,
        m: sample.len(),
        hyp_size,
        bound_on_td_goal: (empirical_td + efficiency) / (2.0 * beta),
        exact_td_goal: None,
        holds: None,
    })
}
