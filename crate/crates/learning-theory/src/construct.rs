//! Closed-form construction of an equitable goal from a human distribution.

use std::collections::BTreeMap;

use dist_core::{attribute_marginal, AttributeKernel, TabularJoint};
use equity_metrics::EquityError;

use crate::error::Result;

/// A constructed goal joint together with its induced attribute kernel.
///
/// The kernel can differ from the human's: the construction fixes
/// Pr(C | A) and the dialogue conditionals and forces Pr(A=0) = Pr(A=1), so
/// the attribute conditional that is implied at each context is whatever
/// those constraints leave. When the human kernel is deterministic per
/// context, or the human is already balanced, the induced kernel equals the
/// input kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstructedGoal {
    pub joint: TabularJoint,
    pub kernel: AttributeKernel,
}

/// Builds the goal with density
/// Pr(d, c, a) = Pr(D=d | C=c) * Pr(C=c | A=a) * 1/2,
/// taking the conditionals from the human distribution. The output is
/// balanced and shares the human's dialogue-given-context and
/// context-given-attribute conditionals by construction.
pub fn construct_equitable_goal(
    human: &TabularJoint,
    kernel: &AttributeKernel,
) -> Result<ConstructedGoal> {
    let (pr0, pr1) = attribute_marginal(human, kernel)?;
    for (value, pr) in [(0u8, pr0), (1u8, pr1)] {
        if pr <= 0.0 {
            return Err(EquityError::DegenerateAttribute {
                attribute: kernel.attribute().to_string(),
                value,
            }
            .into());
        }
    }
    let mut contexts = Vec::new();
    let mut induced = BTreeMap::new();
    let mut conditionals = BTreeMap::new();
    for (context, p_context) in human.contexts() {
        if *p_context == 0.0 {
            continue;
        }
        let k1 = kernel.prob_given(context)?;
        // Pr(C=c, A=a) = Pr(C=c | A~=a) / 2 by Bayes inversion of the human.
        let mass1 = 0.5 * p_context * k1 / pr1;
        let mass0 = 0.5 * p_context * (1.0 - k1) / pr0;
        let total = mass0 + mass1;
        contexts.push((context.clone(), total));
        induced.insert(context.clone(), mass1 / total);
        let conditional =
            human
                .conditional(context)
                .ok_or_else(|| dist_core::DistError::MissingConditional {
                    context: context.clone(),
                })?;
        conditionals.insert(context.clone(), conditional.clone());
    }
    Ok(ConstructedGoal {
        joint: TabularJoint::new(contexts, conditionals)?,
        kernel: AttributeKernel::new(kernel.attribute(), induced)?,
    })
}
