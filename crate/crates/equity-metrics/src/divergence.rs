//! Test divergence between a goal distribution and a learned policy: exact
//! enumeration, a seeded Monte-Carlo estimator, and the empirical form over
//! drawn samples.

use rand::Rng;
use serde::{Deserialize, Serialize};

use dist_core::{
    pick_weighted, substream, AttributeKernel, DialoguePolicy, DistError, Sample, TabularJoint,
};

use crate::error::{EquityError, Result};
use crate::score::TestFunction;

fn policy_distribution<'a>(
    policy: &'a DialoguePolicy,
    context: &str,
) -> Result<&'a std::collections::BTreeMap<String, f64>> {
    policy
        .distribution(context)
        .ok_or_else(|| {
            EquityError::Dist(DistError::MissingContext {
                policy: policy.id().to_string(),
                context: context.to_string(),
            })
        })
}

/// Exact test divergence E[|h(D, A) - h(D-hat, A)|] where (C, D) follows the
/// goal, D-hat follows the policy given C, and A follows the kernel given C,
/// the three mutually independent conditional on C.
pub fn td_exact(
    goal: &TabularJoint,
    kernel: &AttributeKernel,
    policy: &DialoguePolicy,
    test: &TestFunction,
) -> Result<f64> {
    let mut total = 0.0;
    for (context, context_prob) in goal.contexts() {
        if *context_prob == 0.0 {
            continue;
        }
        let p1 = kernel.prob_given(context)?;
        let goal_cond = goal
            .conditional(context)
            .ok_or_else(|| DistError::MissingConditional {
                context: context.clone(),
            })?;
        let policy_cond = policy_distribution(policy, context)?;
        for (a, p_attr) in [(0u8, 1.0 - p1), (1u8, p1)] {
            if p_attr == 0.0 {
                continue;
            }
            for (dialogue, p_dialogue) in goal_cond {
                let h_goal = test.eval(dialogue, a)?;
                for (predicted, p_predicted) in policy_cond {
                    let h_predicted = test.eval(predicted, a)?;
                    total += context_prob
                        * p_attr
                        * p_dialogue
                        * p_predicted
                        * (h_goal - h_predicted).abs();
                }
            }
        }
    }
    Ok(total)
}

/// Two-sided Hoeffding half-width for a mean of `n` values in [0, 1] at the
/// given confidence level.
pub fn hoeffding_half_width(n: usize, confidence: f64) -> Result<f64> {
    if n == 0 {
        return Err(EquityError::InvalidParameter {
            name: "n",
            value: 0.0,
        });
    }
    if !(0.0..1.0).contains(&confidence) || confidence <= 0.0 {
        return Err(EquityError::InvalidParameter {
            name: "confidence",
            value: confidence,
        });
    }
    Ok(((2.0 / (1.0 - confidence)).ln() / (2.0 * n as f64)).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TdEstimate {
    pub estimate: f64,
    pub half_width: f64,
}

/// Monte-Carlo estimate of [`td_exact`] from `n` seeded draws, with a
/// Hoeffding half-width at the given confidence.
///
/// Draw `i` consumes, from `substream(seed, i)`: uniforms for the context,
/// the goal dialogue, the predicted dialogue, and the attribute, in that
/// order.
pub fn td_monte_carlo(
    goal: &TabularJoint,
    kernel: &AttributeKernel,
    policy: &DialoguePolicy,
    test: &TestFunction,
    n: usize,
    seed: u64,
    confidence: f64,
) -> Result<TdEstimate> {
    let half_width = hoeffding_half_width(n, confidence)?;
    let mut total = 0.0;
    for i in 0..n {
        let mut rng = substream(seed, i as u64);
        let u_context: f64 = rng.random();
        let context = pick_weighted(
            goal.contexts().iter().map(|(c, p)| (c.as_str(), *p)),
            u_context,
        )
        .expect("goal has non-empty support");
        let goal_cond = goal
            .conditional(context)
            .ok_or_else(|| DistError::MissingConditional {
                context: context.to_string(),
            })?;
        let policy_cond = policy_distribution(policy, context)?;
        let u_dialogue: f64 = rng.random();
        let dialogue = pick_weighted(
            goal_cond.iter().map(|(d, p)| (d.as_str(), *p)),
            u_dialogue,
        )
        .expect("conditional is non-empty");
        let u_predicted: f64 = rng.random();
        let predicted = pick_weighted(
            policy_cond.iter().map(|(d, p)| (d.as_str(), *p)),
            u_predicted,
        )
        .expect("policy distribution is non-empty");
        let p1 = kernel.prob_given(context)?;
        let u_attr: f64 = rng.random();
        let a = u8::from(u_attr < p1);
        total += (test.eval(dialogue, a)? - test.eval(predicted, a)?).abs();
    }
    Ok(TdEstimate {
        estimate: total / n as f64,
        half_width,
    })
}

/// How the per-record comparison dialogue is produced in [`td_empirical`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InnerMode {
    /// Exact conditional expectation over the policy's dialogue distribution.
    /// Removes estimator variance from bound verification; the default.
    #[default]
    ExpectedInner,
    /// One seeded draw from the policy per record, matching the literal
    /// sample-based statement.
    SampledInner,
}

/// Empirical test divergence of a policy against a drawn sample:
/// (1/m) * sum_i |h(D_i, A_i) - h(D-hat_i, A_i)| with D-hat_i produced per
/// [`InnerMode`]. Record `i` of the sampled-inner mode draws from
/// `substream(seed, i)`.
pub fn td_empirical(
    sample: &Sample,
    policy: &DialoguePolicy,
    test: &TestFunction,
    attribute: &str,
    mode: InnerMode,
    seed: u64,
) -> Result<f64> {
    let mut total = 0.0;
    for (i, draw) in sample.draws().iter().enumerate() {
        let a = draw
            .attribute(attribute)
            .ok_or_else(|| EquityError::MissingSampleAttribute {
                attribute: attribute.to_string(),
            })?;
        let h_human = test.eval(&draw.dialogue, a)?;
        let policy_cond = policy_distribution(policy, &draw.context)?;
        total += match mode {
            InnerMode::ExpectedInner => {
                let mut inner = 0.0;
                for (predicted, p) in policy_cond {
                    inner += p * (h_human - test.eval(predicted, a)?).abs();
                }
                inner
            }
            InnerMode::SampledInner => {
                let mut rng = substream(seed, i as u64);
                let u: f64 = rng.random();
                let predicted =
                    pick_weighted(policy_cond.iter().map(|(d, p)| (d.as_str(), *p)), u)
                        .expect("policy distribution is non-empty");
                (h_human - test.eval(predicted, a)?).abs()
            }
        };
    }
    Ok(total / sample.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use dist_core::fixtures::{e1_goal, e1_kernel, e1_matching_policy, e1_policy};
    use dist_core::{draw_sample, Draw, Sample};

    use crate::score::IdentifierFunction;

    fn e1_score() -> TestFunction {
        TestFunction::identifier(
            IdentifierFunction::from_table(
                "v_F",
                [("d1".to_string(), 1), ("d0".to_string(), 0)].into(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn matching_deterministic_policy_has_zero_divergence() {
        let td = td_exact(&e1_goal(), &e1_kernel(), &e1_matching_policy(), &e1_score()).unwrap();
        assert_eq!(td, 0.0);
    }

    #[test]
    fn e1_divergence_is_three_tenths() {
        let td = td_exact(&e1_goal(), &e1_kernel(), &e1_policy(), &e1_score()).unwrap();
        assert!((td - 0.3).abs() < 1e-12);
    }

    #[test]
    fn constant_test_has_zero_divergence() {
        let constant = TestFunction::tabular(
            "s",
            [("d0".to_string(), [0.4, 0.4]), ("d1".to_string(), [0.4, 0.4])].into(),
        )
        .unwrap();
        let td = td_exact(&e1_goal(), &e1_kernel(), &e1_policy(), &constant).unwrap();
        assert_eq!(td, 0.0);
    }

    #[test]
    fn divergence_symmetric_in_conditionals_when_marginals_match() {
        use dist_core::DialoguePolicy;
        let goal = e1_goal();
        let swapped_goal = dist_core::joint_of_policy(&e1_policy(), goal.contexts()).unwrap();
        let goal_as_policy = DialoguePolicy::new(
            "goal",
            goal.contexts()
                .iter()
                .filter_map(|(c, _)| goal.conditional(c).map(|m| (c.clone(), m.clone())))
                .collect(),
        )
        .unwrap();
        let a = td_exact(&goal, &e1_kernel(), &e1_policy(), &e1_score()).unwrap();
        let b = td_exact(&swapped_goal, &e1_kernel(), &goal_as_policy, &e1_score()).unwrap();
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn monte_carlo_matches_exact_within_half_width() {
        let estimate = td_monte_carlo(
            &e1_goal(),
            &e1_kernel(),
            &e1_policy(),
            &e1_score(),
            100_000,
            11,
            0.99,
        )
        .unwrap();
        assert!((estimate.estimate - 0.3).abs() <= estimate.half_width);
    }

    #[test]
    fn monte_carlo_zero_on_matching_deterministic_policy() {
        let estimate = td_monte_carlo(
            &e1_goal(),
            &e1_kernel(),
            &e1_matching_policy(),
            &e1_score(),
            1000,
            5,
            0.95,
        )
        .unwrap();
        assert_eq!(estimate.estimate, 0.0);
    }

    #[test]
    fn half_width_formula_at_n_one() {
        let hw = hoeffding_half_width(1, 0.95).unwrap();
        assert!((hw - ((2.0f64 / 0.05).ln() / 2.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn empirical_expected_inner_hand_value() {
        let draws = vec![
            Draw {
                context: "c0".into(),
                dialogue: "d1".into(),
                attributes: [("F".to_string(), 1)].into(),
            },
            Draw {
                context: "c1".into(),
                dialogue: "d0".into(),
                attributes: [("F".to_string(), 0)].into(),
            },
        ];
        let sample = Sample::new(draws, 0).unwrap();
        let td = td_empirical(
            &sample,
            &e1_policy(),
            &e1_score(),
            "F",
            InnerMode::ExpectedInner,
            0,
        )
        .unwrap();
        assert!((td - 0.3).abs() < 1e-12);
    }

    #[test]
    fn empirical_zero_when_sample_matches_deterministic_policy() {
        let sample = draw_sample(&e1_goal(), &[e1_kernel()], 50, 3).unwrap();
        let td = td_empirical(
            &sample,
            &e1_matching_policy(),
            &e1_score(),
            "F",
            InnerMode::ExpectedInner,
            0,
        )
        .unwrap();
        assert_eq!(td, 0.0);
    }

    #[test]
    fn sampled_inner_is_deterministic_under_seed() {
        let sample = draw_sample(&e1_goal(), &[e1_kernel()], 100, 9).unwrap();
        let a = td_empirical(
            &sample,
            &e1_policy(),
            &e1_score(),
            "F",
            InnerMode::SampledInner,
            77,
        )
        .unwrap();
        let b = td_empirical(
            &sample,
            &e1_policy(),
            &e1_score(),
            "F",
            InnerMode::SampledInner,
            77,
        )
        .unwrap();
        assert_eq!(a, b);
    }
}
