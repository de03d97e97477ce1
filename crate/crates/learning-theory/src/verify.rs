//! Exact verification of the two theorem statements on concrete instances.

use serde::{Deserialize, Serialize};

use dist_core::{
    attribute_marginal, joint_of_policy, AttributeKernel, DialoguePolicy, TabularJoint,
};
use equity_metrics::{is_equitable_goal, parity_gap, td_exact, TestFunction};

use crate::bound::{beta, COMPARISON_TOLERANCE};
use crate::context::{check_context_aware, check_context_preserving_kernels};
use crate::error::{Assumption, Result, TheoryError};

/// Outcome of checking that the learned joint's parity gap is bounded by
/// twice the test divergence against an equitable goal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thm1Verdict {
    pub delta_gap: f64,
    pub td: f64,
    pub holds: bool,
}

/// Both sides computed by exact enumeration. Errs unless the goal passes the
/// equitable-goal predicate first.
pub fn verify_thm1(
    goal: &TabularJoint,
    kernel: &AttributeKernel,
    policy: &DialoguePolicy,
    score: &TestFunction,
) -> Result<Thm1Verdict> {
    let report = parity_gap(goal, kernel, score)?;
    let check = is_equitable_goal(goal, kernel, score, COMPARISON_TOLERANCE)?;
    if !check.verdict {
        return Err(TheoryError::NotEquitableGoal {
            balanced: check.balanced,
            parity_gap: report.gap,
        });
    }
    let learned = joint_of_policy(policy, goal.contexts())?;
    let delta_gap = parity_gap(&learned, kernel, score)?.gap;
    let td = td_exact(goal, kernel, policy, score)?;
    Ok(Thm1Verdict {
        delta_gap,
        td,
        holds: delta_gap <= 2.0 * td + COMPARISON_TOLERANCE,
    })
}

/// Outcome of checking the divergence transfer inequality
/// TD_goal <= TD_human / (2 beta).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FinaleVerdict {
    pub td_goal: f64,
    pub td_human: f64,
    pub beta: f64,
    pub holds: bool,
}

/// General form with one attribute kernel per side; preconditions are the
/// structural assumptions, checked with each distribution's own kernel.
pub fn verify_finale_kernels(
    goal: &TabularJoint,
    goal_kernel: &AttributeKernel,
    human: &TabularJoint,
    human_kernel: &AttributeKernel,
    policy: &DialoguePolicy,
    test: &TestFunction,
) -> Result<FinaleVerdict> {
    let aware = check_context_aware(human, goal, COMPARISON_TOLERANCE)?;
    if !aware.verdict {
        return Err(TheoryError::AssumptionViolation {
            assumption: Assumption::ContextAwareness,
            max_deviation: aware.max_deviation,
        });
    }
    let preserving =
        check_context_preserving_kernels(human, human_kernel, goal, goal_kernel, COMPARISON_TOLERANCE)?;
    if !preserving.verdict {
        return Err(TheoryError::AssumptionViolation {
            assumption: Assumption::ContextPreservation,
            max_deviation: preserving.max_deviation,
        });
    }
    let (_, pr1) = attribute_marginal(goal, goal_kernel)?;
    if (pr1 - 0.5).abs() > COMPARISON_TOLERANCE {
        return Err(TheoryError::AssumptionViolation {
            assumption: Assumption::Balance,
            max_deviation: (pr1 - 0.5).abs(),
        });
    }
    let beta = beta(human, human_kernel)?;
    let td_goal = td_exact(goal, goal_kernel, policy, test)?;
    let td_human = td_exact(human, human_kernel, policy, test)?;
    Ok(FinaleVerdict {
        td_goal,
        td_human,
        beta,
        holds: td_goal <= td_human / (2.0 * beta) + COMPARISON_TOLERANCE,
    })
}

/// The common single-kernel form: human and goal sample the attribute from
/// the same conditional.
pub fn verify_finale(
    goal: &TabularJoint,
    human: &TabularJoint,
    kernel: &AttributeKernel,
    policy: &DialoguePolicy,
    test: &TestFunction,
) -> Result<FinaleVerdict> {
    verify_finale_kernels(goal, kernel, human, kernel, policy, test)
}
