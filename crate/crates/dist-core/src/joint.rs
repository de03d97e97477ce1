use std::collections::{BTreeMap, BTreeSet};

use crate::error::{DistError, Result};
use crate::kernel::AttributeKernel;
use crate::policy::DialoguePolicy;

/// Invariant tolerance: every constructed distribution sums to 1 within this.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Inputs whose total deviates from 1 by at most this are renormalized;
/// anything further off is rejected.
pub const RENORM_TOLERANCE: f64 = 1e-9;

/// Validates probabilities and renormalizes them in place.
///
/// Accepts totals within [`RENORM_TOLERANCE`] of 1 and divides through by the
/// observed sum, so downstream enumeration sees a total within
/// [`SUM_TOLERANCE`] of 1.
pub(crate) fn normalize_values(what: &str, values: Vec<&mut f64>) -> Result<f64> {
    let mut sum = 0.0;
    for v in &values {
        if !v.is_finite() || **v < 0.0 || **v > 1.0 + RENORM_TOLERANCE {
            return Err(DistError::InvalidProbability {
                what: what.to_string(),
                value: **v,
            });
        }
        sum += **v;
    }
    let deviation = (sum - 1.0).abs();
    if deviation > RENORM_TOLERANCE {
        return Err(DistError::NotNormalized {
            what: what.to_string(),
            sum,
            tolerance: RENORM_TOLERANCE,
        });
    }
    // Values already inside the invariant tolerance are kept bit-identical.
    if deviation > SUM_TOLERANCE {
        for v in values {
            *v /= sum;
        }
    }
    Ok(sum)
}

/// Finite-support joint distribution over (context, dialogue).
///
/// Stored as an explicit context marginal plus per-context dialogue
/// conditionals; absent entries carry probability 0. Immutable after
/// construction.
#[derive(Debug, Clone, PartialEq)]
pub struct TabularJoint {
    contexts: Vec<(String, f64)>,
    conditionals: BTreeMap<String, BTreeMap<String, f64>>,
}

impl TabularJoint {
    /// Builds a joint from a context marginal and dialogue conditionals.
    ///
    /// The marginal and every conditional for a positive-probability context
    /// must each sum to 1 within [`RENORM_TOLERANCE`]; they are renormalized
    /// on acceptance.
    pub fn new(
        mut contexts: Vec<(String, f64)>,
        mut conditionals: BTreeMap<String, BTreeMap<String, f64>>,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (id, _) in &contexts {
            if !seen.insert(id.clone()) {
                return Err(DistError::DuplicateContext {
                    context: id.clone(),
                });
            }
        }
        normalize_values("context marginal", contexts.iter_mut().map(|(_, p)| p).collect())?;
        for (id, prob) in &contexts {
            if *prob > 0.0 {
                let conditional = conditionals
                    .get_mut(id)
                    .filter(|m| !m.is_empty())
                    .ok_or_else(|| DistError::MissingConditional {
                        context: id.clone(),
                    })?;
                normalize_values(
                    &format!("dialogue conditional for context {id:?}"),
                    conditional.values_mut().collect(),
                )?;
            }
        }
        Ok(Self {
            contexts,
            conditionals,
        })
    }

    /// Context marginal in declaration order.
    pub fn contexts(&self) -> &[(String, f64)] {
        &self.contexts
    }

    /// Marginal probability of a context; 0 when absent.
    pub fn context_prob(&self, context: &str) -> f64 {
        self.contexts
            .iter()
            .find(|(id, _)| id == context)
            .map(|(_, p)| *p)
            .unwrap_or(0.0)
    }

    /// Dialogue distribution conditional on a context.
    pub fn conditional(&self, context: &str) -> Option<&BTreeMap<String, f64>> {
        self.conditionals.get(context)
    }

    /// Pr(D = dialogue | C = context); 0 when either is absent.
    pub fn dialogue_given(&self, context: &str, dialogue: &str) -> f64 {
        self.conditionals
            .get(context)
            .and_then(|m| m.get(dialogue))
            .copied()
            .unwrap_or(0.0)
    }

    /// Union of dialogue ids appearing in any conditional.
    pub fn dialogue_support(&self) -> BTreeSet<String> {
        self.conditionals
            .values()
            .flat_map(|m| m.keys().cloned())
            .collect()
    }

    /// Total probability mass; 1 within [`SUM_TOLERANCE`] by construction.
    pub fn total_probability(&self) -> f64 {
        self.contexts
            .iter()
            .map(|(id, p)| {
                let inner: f64 = self
                    .conditionals
                    .get(id)
                    .map(|m| m.values().sum())
                    .unwrap_or(0.0);
                p * inner
            })
            .sum()
    }
}

/// Pairs a policy with a context marginal, yielding the joint distribution of
/// contexts and policy-generated dialogues.
pub fn joint_of_policy(
    policy: &DialoguePolicy,
    context_marginal: &[(String, f64)],
) -> Result<TabularJoint> {
    let mut conditionals = BTreeMap::new();
    for (context, prob) in context_marginal {
        if *prob > 0.0 {
            let dist =
                policy
                    .distribution(context)
                    .ok_or_else(|| DistError::MissingContext {
                        policy: policy.id().to_string(),
                        context: context.clone(),
                    })?;
            conditionals.insert(context.clone(), dist.clone());
        }
    }
    TabularJoint::new(context_marginal.to_vec(), conditionals)
}

/// Marginal attribute distribution `(Pr(A=0), Pr(A=1))` implied by a joint and
/// an attribute kernel.
pub fn attribute_marginal(joint: &TabularJoint, kernel: &AttributeKernel) -> Result<(f64, f64)> {
    let mut pr1 = 0.0;
    for (context, prob) in joint.contexts() {
        if *prob > 0.0 {
            pr1 += prob * kernel.prob_given(context)?;
        }
    }
    let pr1 = pr1.clamp(0.0, 1.0);
    Ok((1.0 - pr1, pr1))
}

/// Exact expectation of `f(context, dialogue, attribute)` under the joint and
/// attribute kernel, by enumeration over the full support.
///
/// Summation follows the declared context order, then dialogue ids in sorted
/// order, then attribute values 0 and 1, so repeated calls reduce in the same
/// order.
pub fn expectation<F>(joint: &TabularJoint, kernel: &AttributeKernel, f: F) -> Result<f64>
where
    F: Fn(&str, &str, u8) -> f64,
{
    let mut total = 0.0;
    for (context, context_prob) in joint.contexts() {
        if *context_prob == 0.0 {
            continue;
        }
        let p_attr = kernel.prob_given(context)?;
        let conditional = joint
            .conditional(context)
            .ok_or_else(|| DistError::MissingConditional {
                context: context.clone(),
            })?;
        for (dialogue, dialogue_prob) in conditional {
            let inner =
                (1.0 - p_attr) * f(context, dialogue, 0) + p_attr * f(context, dialogue, 1);
            total += context_prob * dialogue_prob * inner;
        }
    }
    Ok(total)
}
