use serde::{Deserialize, Serialize};

use dist_core::{HypothesisSpace, Sample};
use equity_metrics::{td_empirical, InnerMode, TestFunction};

use crate::error::Result;

/// The policy selected by empirical divergence minimization.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErmSelection {
    pub policy_id: String,
    pub policy_index: usize,
    pub empirical_td: f64,
}

/// Picks the policy with the smallest expected-inner empirical divergence on
/// the sample. Ties go to the lowest list index.
pub fn erm_learn(
    sample: &Sample,
    hypotheses: &HypothesisSpace,
    test: &TestFunction,
    attribute: &str,
) -> Result<ErmSelection> {
    let mut best: Option<ErmSelection> = None;
    for (index, policy) in hypotheses.policies().iter().enumerate() {
        let empirical_td = td_empirical(
            sample,
            policy,
            test,
            attribute,
            InnerMode::ExpectedInner,
            sample.seed(),
        )?;
        let better = match &best {
            None => true,
            Some(current) => empirical_td < current.empirical_td,
        };
        if better {
            best = Some(ErmSelection {
                policy_id: policy.id().to_string(),
                policy_index: index,
                empirical_td,
            });
        }
    }
    Ok(best.expect("hypothesis space is non-empty"))
}
