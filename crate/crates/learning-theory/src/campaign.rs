//! Randomized verification campaigns and the repeated-sampling harness for
//! the probabilistic bound.

use serde::{Deserialize, Serialize};

use dist_core::{
    attribute_marginal, draw_sample, substream, AttributeKernel, HypothesisSpace, TabularJoint,
};
use equity_metrics::{td_exact, TestFunction};

use crate::bound::{beta, thm2_bound, COMPARISON_TOLERANCE};
use crate::construct::construct_equitable_goal;
use crate::context::{check_context_aware, check_context_preserving_kernels};
use crate::erm::erm_learn;
use crate::error::{Assumption, Result, TheoryError};
use crate::generate::{
    random_equitable_instance, random_human_instance, random_hypothesis_space,
    random_labeled_world, random_policy, random_tabular_test, GeneratorLimits,
};
use crate::verify::{verify_finale_kernels, verify_thm1};

/// Per-trial seed derivation: trial `i` of a campaign keyed by `base` uses
/// seed `base XOR i`.
pub fn trial_seed(base: u64, trial: u64) -> u64 {
    base ^ trial
}

/// Configuration for the randomized-instance campaigns, including the JSON
/// form accepted at the command line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub trials: usize,
    pub max_contexts: usize,
    pub max_dialogues: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            trials: 1000,
            max_contexts: 4,
            max_dialogues: 4,
            seed: 7,
            tol: COMPARISON_TOLERANCE,
        }
    }
}

impl CampaignConfig {
    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(TheoryError::Domain {
                name: "trials",
                value: 0.0,
            });
        }
        if self.max_contexts == 0 || self.max_dialogues == 0 {
            return Err(TheoryError::Domain {
                name: "support size",
                value: 0.0,
            });
        }
        Ok(())
    }

    fn limits(&self) -> GeneratorLimits {
        GeneratorLimits {
            max_contexts: self.max_contexts,
            max_dialogues: self.max_dialogues,
        }
    }
}

/// Outcome of an exact-inequality campaign. `worst_slack` is the minimum of
/// (right-hand side + tol - left-hand side) across trials; a negative value
/// marks a violation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub theorem: String,
    pub trials: usize,
    pub violations: usize,
    pub violation_rate: f64,
    pub worst_slack: f64,
    pub seed: u64,
}

/// Randomized equitable-goal instances, each checked for
/// parity gap <= 2 * divergence by exact enumeration.
pub fn thm1_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let mut violations = 0;
    let mut worst_slack = f64::INFINITY;
    for trial in 0..config.trials {
        let mut rng = substream(config.seed, trial as u64);
        let instance = random_equitable_instance(&mut rng, config.limits())?;
        let verdict = verify_thm1(
            &instance.goal,
            &instance.kernel,
            &instance.policy,
            &instance.score,
        )?;
        let slack = 2.0 * verdict.td + config.tol - verdict.delta_gap;
        worst_slack = worst_slack.min(slack);
        if !verdict.holds {
            violations += 1;
        }
    }
    Ok(CampaignReport {
        theorem: "thm1".to_string(),
        trials: config.trials,
        violations,
        violation_rate: violations as f64 / config.trials as f64,
        worst_slack,
        seed: config.seed,
    })
}

/// Randomized (human, constructed-goal) pairs, each checked for
/// TD_goal <= TD_human / (2 beta) by exact enumeration.
pub fn finale_campaign(config: &CampaignConfig) -> Result<CampaignReport> {
    config.validate()?;
    let mut violations = 0;
    let mut worst_slack = f64::INFINITY;
    for trial in 0..config.trials {
        let mut rng = substream(config.seed, trial as u64);
        let (human, human_kernel, contexts, dialogues) =
            random_human_instance(&mut rng, config.limits())?;
        let constructed = construct_equitable_goal(&human, &human_kernel)?;
        let policy = random_policy(&mut rng, "theta", &contexts, &dialogues)?;
        let test = random_tabular_test(&mut rng, &dialogues)?;
        let verdict = verify_finale_kernels(
            &constructed.joint,
            &constructed.kernel,
            &human,
            &human_kernel,
            &policy,
            &test,
        )?;
        let slack = verdict.td_human / (2.0 * verdict.beta) + config.tol - verdict.td_goal;
        worst_slack = worst_slack.min(slack);
        if !verdict.holds {
            violations += 1;
        }
    }
    Ok(CampaignReport {
        theorem: "finale".to_string(),
        trials: config.trials,
        violations,
        violation_rate: violations as f64 / config.trials as f64,
        worst_slack,
        seed: config.seed,
    })
}

/// Empirical record of how often the probabilistic bound failed across
/// repeated samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub violations: usize,
    pub violation_rate: f64,
    pub delta: f64,
    pub seeds: Vec<u64>,
}

/// Acceptance budget for an observed violation rate: delta plus three
/// binomial standard deviations at the given trial count.
pub fn violation_budget(delta: f64, trials: usize) -> f64 {
    delta + 3.0 * (delta * (1.0 - delta) / trials as f64).sqrt()
}

/// Repeated-sampling check of the learning bound on a fixed world.
///
/// Per trial: draw a fresh human sample with seed `trial_seed(base_seed, i)`,
/// run the ERM learner, then test every policy's exact goal divergence
/// against its sample bound (the theorem quantifies over all policies, so a
/// trial violates when any policy does).
#[allow(clippy::too_many_arguments)]
pub fn trial_harness(
    human: &TabularJoint,
    kernel: &AttributeKernel,
    goal: &TabularJoint,
    hypotheses: &HypothesisSpace,
    test: &TestFunction,
    m: usize,
    delta: f64,
    trials: usize,
    base_seed: u64,
) -> Result<TrialSummary> {
    if trials == 0 {
        return Err(TheoryError::Domain {
            name: "trials",
            value: 0.0,
        });
    }
    let aware = check_context_aware(human, goal, COMPARISON_TOLERANCE)?;
    if !aware.verdict {
        return Err(TheoryError::AssumptionViolation {
            assumption: Assumption::ContextAwareness,
            max_deviation: aware.max_deviation,
        });
    }
    let preserving = check_context_preserving_kernels(human, kernel, goal, kernel, COMPARISON_TOLERANCE)?;
    if !preserving.verdict {
        return Err(TheoryError::AssumptionViolation {
            assumption: Assumption::ContextPreservation,
            max_deviation: preserving.max_deviation,
        });
    }
    let (_, goal_pr1) = attribute_marginal(goal, kernel)?;
    if (goal_pr1 - 0.5).abs() > COMPARISON_TOLERANCE {
        return Err(TheoryError::AssumptionViolation {
            assumption: Assumption::Balance,
            max_deviation: (goal_pr1 - 0.5).abs(),
        });
    }
    let _ = beta(human, kernel)?;
    let exact_tds: Vec<f64> = hypotheses
        .policies()
        .iter()
        .map(|policy| td_exact(goal, kernel, policy, test))
        .collect::<equity_metrics::Result<_>>()?;

    let mut violations = 0;
    let mut seeds = Vec::with_capacity(trials);
    for trial in 0..trials {
        let seed = trial_seed(base_seed, trial as u64);
        seeds.push(seed);
        let sample = draw_sample(human, std::slice::from_ref(kernel), m, seed)?;
        let _selection = erm_learn(&sample, hypotheses, test, kernel.attribute())?;
        let mut violated = false;
        for (policy, exact_td) in hypotheses.policies().iter().zip(&exact_tds) {
            let report = thm2_bound(
                &sample,
                policy,
                test,
                hypotheses.len(),
                delta,
                human,
                kernel,
            )?
            .with_exact_td(*exact_td);
            if report.holds == Some(false) {
                violated = true;
            }
        }
        if violated {
            violations += 1;
        }
    }
    Ok(TrialSummary {
        trials,
        violations,
        violation_rate: violations as f64 / trials as f64,
        delta,
        seeds,
    })
}

/// Configuration for the repeated-sampling campaign on a generated world.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thm2Config {
    pub trials: usize,
    pub m: usize,
    pub delta: f64,
    pub hyp_size: usize,
    pub max_contexts: usize,
    pub max_dialogues: usize,
    pub seed: u64,
}

impl Default for Thm2Config {
    fn default() -> Self {
        Self {
            trials: 200,
            m: 500,
            delta: 0.1,
            hyp_size: 16,
            max_contexts: 4,
            max_dialogues: 4,
            seed: 7,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thm2CampaignReport {
    pub theorem: String,
    pub summary: TrialSummary,
    pub budget: f64,
    pub within_budget: bool,
    pub hyp_size: usize,
    pub m: usize,
    pub seed: u64,
}

/// Generates a consensus-labeled world (which satisfies the structural
/// assumptions by construction), constructs its equitable goal, then runs the
/// trial harness over a random hypothesis space.
pub fn thm2_campaign(config: &Thm2Config) -> Result<Thm2CampaignReport> {
    if config.trials == 0 {
        return Err(TheoryError::Domain {
            name: "trials",
            value: 0.0,
        });
    }
    if config.hyp_size == 0 {
        return Err(TheoryError::Domain {
            name: "hyp_size",
            value: 0.0,
        });
    }
    let mut rng = substream(config.seed, u64::MAX);
    let world = random_labeled_world(
        &mut rng,
        GeneratorLimits {
            max_contexts: config.max_contexts,
            max_dialogues: config.max_dialogues,
        },
    )?;
    let constructed = construct_equitable_goal(&world.human, &world.kernel)?;
    let hypotheses =
        random_hypothesis_space(&mut rng, config.hyp_size, &world.contexts, &world.dialogues)?;
    let test = TestFunction::identifier(world.identifier.clone());
    let summary = trial_harness(
        &world.human,
        &world.kernel,
        &constructed.joint,
        &hypotheses,
        &test,
        config.m,
        config.delta,
        config.trials,
        config.seed,
    )?;
    let budget = violation_budget(config.delta, config.trials);
    let within_budget = summary.violation_rate <= budget;
    Ok(Thm2CampaignReport {
        theorem: "thm2".to_string(),
        summary,
        budget,
        within_budget,
        hyp_size: config.hyp_size,
        m: config.m,
        seed: config.seed,
    })
}
