//! Structural checks relating a human distribution to a goal: shared
//! dialogue-given-context conditionals and shared context-given-attribute
//! conditionals.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use dist_core::{attribute_marginal, AttributeKernel, TabularJoint};
use equity_metrics::EquityError;

use crate::error::{Result, TheoryError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContextCheck {
    pub verdict: bool,
    pub max_deviation: f64,
}

fn positive_contexts(joint: &TabularJoint) -> BTreeSet<String> {
    joint
        .contexts()
        .iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|(id, _)| id.clone())
        .collect()
}

/// Context-awareness: Pr(D | C) agrees across the two distributions on every
/// shared context, cellwise over the union of their dialogue supports.
pub fn check_context_aware(
    human: &TabularJoint,
    goal: &TabularJoint,
    tol: f64,
) -> Result<ContextCheck> {
    let shared: Vec<String> = positive_contexts(human)
        .intersection(&positive_contexts(goal))
        .cloned()
        .collect();
    if shared.is_empty() {
        return Err(TheoryError::EmptySharedSupport);
    }
    let mut max_deviation = 0.0f64;
    for context in &shared {
        let mut dialogues = BTreeSet::new();
        if let Some(cond) = human.conditional(context) {
            dialogues.extend(cond.keys().cloned());
        }
        if let Some(cond) = goal.conditional(context) {
            dialogues.extend(cond.keys().cloned());
        }
        for dialogue in &dialogues {
            let deviation =
                (human.dialogue_given(context, dialogue) - goal.dialogue_given(context, dialogue))
                    .abs();
            max_deviation = max_deviation.max(deviation);
        }
    }
    Ok(ContextCheck {
        verdict: max_deviation <= tol,
        max_deviation,
    })
}

fn context_given_attribute(
    joint: &TabularJoint,
    kernel: &AttributeKernel,
    context: &str,
    a: u8,
    pr_a: f64,
) -> Result<f64> {
    let p_context = joint.context_prob(context);
    if p_context == 0.0 {
        return Ok(0.0);
    }
    Ok(p_context * kernel.prob_value_given(context, a)? / pr_a)
}

/// Context-preservation with a kernel per side: Pr(C | A) from each joint's
/// own attribute kernel, compared cellwise by Bayes inversion.
pub fn check_context_preserving_kernels(
    human: &TabularJoint,
    human_kernel: &AttributeKernel,
    goal: &TabularJoint,
    goal_kernel: &AttributeKernel,
    tol: f64,
) -> Result<ContextCheck> {
    let pr_human = attribute_marginal(human, human_kernel)?;
    let pr_goal = attribute_marginal(goal, goal_kernel)?;
    for (kernel, (pr0, pr1)) in [(human_kernel, pr_human), (goal_kernel, pr_goal)] {
        for (value, pr) in [(0u8, pr0), (1u8, pr1)] {
            if pr <= 0.0 {
                return Err(EquityError::DegenerateAttribute {
                    attribute: kernel.attribute().to_string(),
                    value,
                }
                .into());
            }
        }
    }
    let contexts: BTreeSet<String> = positive_contexts(human)
        .union(&positive_contexts(goal))
        .cloned()
        .collect();
    let mut max_deviation = 0.0f64;
    for context in &contexts {
        for (a, pr_h, pr_g) in [(0u8, pr_human.0, pr_goal.0), (1u8, pr_human.1, pr_goal.1)] {
            let h = context_given_attribute(human, human_kernel, context, a, pr_h)?;
            let g = context_given_attribute(goal, goal_kernel, context, a, pr_g)?;
            max_deviation = max_deviation.max((h - g).abs());
        }
    }
    Ok(ContextCheck {
        verdict: max_deviation <= tol,
        max_deviation,
    })
}

/// Context-preservation under one shared attribute kernel, the common case
/// where human and goal sample the attribute from the same conditional.
pub fn check_context_preserving(
    human: &TabularJoint,
    goal: &TabularJoint,
    kernel: &AttributeKernel,
    tol: f64,
) -> Result<ContextCheck> {
    check_context_preserving_kernels(human, kernel, goal, kernel, tol)
}
