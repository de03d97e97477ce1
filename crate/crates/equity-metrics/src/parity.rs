use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use dist_core::{attribute_marginal, AttributeKernel, TabularJoint};

use crate::error::{EquityError, Result};
use crate::score::TestFunction;

/// Balance tolerance for exact tabular inputs. Empirical pipelines take a
/// configurable tolerance instead.
pub const BALANCE_TOLERANCE: f64 = 1e-9;

/// Score parity measurement for one protected attribute.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParityReport {
    pub attribute: String,
    /// E[s(D, 0) | A = 0]
    pub expectation_a0: f64,
    /// E[s(D, 1) | A = 1]
    pub expectation_a1: f64,
    /// |expectation_a1 - expectation_a0|
    pub gap: f64,
    pub balanced: bool,
    pub pr_a1: f64,
}

fn conditional_expectations(
    joint: &TabularJoint,
    kernel: &AttributeKernel,
    score: &TestFunction,
) -> Result<(f64, f64, f64)> {
    let (pr0, pr1) = attribute_marginal(joint, kernel)?;
    if pr0 <= 0.0 {
        return Err(EquityError::DegenerateAttribute {
            attribute: kernel.attribute().to_string(),
            value: 0,
        });
    }
    if pr1 <= 0.0 {
        return Err(EquityError::DegenerateAttribute {
            attribute: kernel.attribute().to_string(),
            value: 1,
        });
    }
    let mut weighted = [0.0f64; 2];
    for (context, context_prob) in joint.contexts() {
        if *context_prob == 0.0 {
            continue;
        }
        let p1 = kernel.prob_given(context)?;
        let conditional =
            joint
                .conditional(context)
                .ok_or_else(|| dist_core::DistError::MissingConditional {
                    context: context.clone(),
                })?;
        for (dialogue, dialogue_prob) in conditional {
            let mass = context_prob * dialogue_prob;
            weighted[0] += mass * (1.0 - p1) * score.eval(dialogue, 0)?;
            weighted[1] += mass * p1 * score.eval(dialogue, 1)?;
        }
    }
    Ok((weighted[0] / pr0, weighted[1] / pr1, pr1))
}

/// Parity gap of a contextualized dialogue distribution under a scoring
/// function, by exact enumeration.
pub fn parity_gap(
    joint: &TabularJoint,
    kernel: &AttributeKernel,
    score: &TestFunction,
) -> Result<ParityReport> {
    let (e0, e1, pr1) = conditional_expectations(joint, kernel, score)?;
    Ok(ParityReport {
        attribute: kernel.attribute().to_string(),
        expectation_a0: e0,
        expectation_a1: e1,
        gap: (e1 - e0).abs(),
        balanced: (pr1 - 0.5).abs() <= BALANCE_TOLERANCE,
        pr_a1: pr1,
    })
}

/// Outcome of the equitable-goal predicate: balanced and score parity within
/// `tol`, reported separately alongside the combined verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquitableGoalCheck {
    pub balanced: bool,
    pub parity: bool,
    pub verdict: bool,
}

pub fn is_equitable_goal(
    joint: &TabularJoint,
    kernel: &AttributeKernel,
    score: &TestFunction,
    tol: f64,
) -> Result<EquitableGoalCheck> {
    let report = parity_gap(joint, kernel, score)?;
    let parity = report.gap <= tol;
    Ok(EquitableGoalCheck {
        balanced: report.balanced,
        parity,
        verdict: report.balanced && parity,
    })
}

/// Per-attribute outcome inside a multi-attribute audit. Degenerate
/// attributes are reported rather than failing the whole audit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AttributeParity {
    Ok(ParityReport),
    Degenerate { attribute: String, error: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiParityReport {
    pub reports: Vec<AttributeParity>,
    /// True only when every attribute produced a report and every gap is
    /// within tolerance.
    pub aggregate: bool,
}

/// Measures parity per attribute, collecting degenerate attributes instead of
/// aborting. The aggregate verdict is true iff every gap is at most `tol`.
pub fn multi_parity_report(
    joint: &TabularJoint,
    kernels: &[AttributeKernel],
    scores: &BTreeMap<String, TestFunction>,
    tol: f64,
) -> Result<MultiParityReport> {
    let mut reports = Vec::with_capacity(kernels.len());
    let mut aggregate = true;
    for kernel in kernels {
        let attribute = kernel.attribute().to_string();
        let score = scores
            .get(&attribute)
            .ok_or_else(|| EquityError::MissingScore {
                attribute: attribute.clone(),
            })?;
        match parity_gap(joint, kernel, score) {
            Ok(report) => {
                aggregate &= report.gap <= tol;
                reports.push(AttributeParity::Ok(report));
            }
            Err(err @ EquityError::DegenerateAttribute { .. }) => {
                aggregate = false;
                reports.push(AttributeParity::Degenerate {
                    attribute,
                    error: err.to_string(),
                });
            }
            Err(err) => return Err(err),
        }
    }
    Ok(MultiParityReport { reports, aggregate })
}
