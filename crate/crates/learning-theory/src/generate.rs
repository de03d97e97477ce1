//! Seeded random instances for the verification campaigns.
//!
//! Generated worlds are parameterized exactly as (context marginal, dialogue
//! conditional, attribute kernel, policy kernel), so the dialogue, the
//! predicted dialogue, and the attribute are independent conditional on the
//! context by construction.

use std::collections::BTreeMap;

use rand::Rng;

use dist_core::{AttributeKernel, ChaCha8Rng, DialoguePolicy, HypothesisSpace, TabularJoint};
use equity_metrics::{parity_gap, IdentifierFunction, TestFunction};

use crate::error::Result;

/// Support-size caps for generated instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorLimits {
    pub max_contexts: usize,
    pub max_dialogues: usize,
}

impl Default for GeneratorLimits {
    fn default() -> Self {
        Self {
            max_contexts: 4,
            max_dialogues: 4,
        }
    }
}

/// Random point in the interior of the probability simplex.
pub fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 0.05).collect();
    let sum: f64 = raw.iter().sum();
    raw.iter().map(|v| v / sum).collect()
}

fn ids(prefix: &str, n: usize) -> Vec<String> {
    (0..n).map(|i| format!("{prefix}{i}")).collect()
}

fn random_conditionals(
    rng: &mut ChaCha8Rng,
    contexts: &[String],
    dialogues: &[String],
) -> BTreeMap<String, BTreeMap<String, f64>> {
    contexts
        .iter()
        .map(|context| {
            let probs = random_simplex(rng, dialogues.len());
            (
                context.clone(),
                dialogues
                    .iter()
                    .cloned()
                    .zip(probs.iter().copied())
                    .collect(),
            )
        })
        .collect()
}

/// Random joint with full support over the given context and dialogue ids.
pub fn random_joint(
    rng: &mut ChaCha8Rng,
    contexts: &[String],
    dialogues: &[String],
) -> Result<TabularJoint> {
    let marginal = random_simplex(rng, contexts.len());
    let joint = TabularJoint::new(
        contexts
            .iter()
            .cloned()
            .zip(marginal.iter().copied())
            .collect(),
        random_conditionals(rng, contexts, dialogues),
    )?;
    Ok(joint)
}

/// Random policy with full support over the given ids.
pub fn random_policy(
    rng: &mut ChaCha8Rng,
    id: impl Into<String>,
    contexts: &[String],
    dialogues: &[String],
) -> Result<DialoguePolicy> {
    Ok(DialoguePolicy::new(
        id,
        random_conditionals(rng, contexts, dialogues),
    )?)
}

/// Hypothesis space of `size` random policies over the given ids.
pub fn random_hypothesis_space(
    rng: &mut ChaCha8Rng,
    size: usize,
    contexts: &[String],
    dialogues: &[String],
) -> Result<HypothesisSpace> {
    let policies = (0..size)
        .map(|i| random_policy(rng, format!("theta{i}"), contexts, dialogues))
        .collect::<Result<Vec<_>>>()?;
    Ok(HypothesisSpace::new(policies)?)
}

/// Random kernel with values bounded away from 0 and 1, so both attribute
/// values keep positive probability under any full-support marginal.
pub fn random_interior_kernel(
    rng: &mut ChaCha8Rng,
    attribute: impl Into<String>,
    contexts: &[String],
) -> Result<AttributeKernel> {
    Ok(AttributeKernel::new(
        attribute,
        contexts
            .iter()
            .map(|c| (c.clone(), 0.05 + 0.9 * rng.random::<f64>()))
            .collect(),
    )?)
}

/// Rescales a kernel so the attribute marginal under `joint` is exactly 1/2:
/// the side of the unit interval with excess mass is shrunk affinely.
pub fn balance_kernel(joint: &TabularJoint, kernel: &AttributeKernel) -> Result<AttributeKernel> {
    let (_, pr1) = dist_core::attribute_marginal(joint, kernel)?;
    let probs = kernel
        .probs()
        .iter()
        .map(|(context, k)| {
            let adjusted = if pr1 >= 0.5 {
                k / (2.0 * pr1)
            } else {
                1.0 - (1.0 - k) / (2.0 * (1.0 - pr1))
            };
            (context.clone(), adjusted)
        })
        .collect();
    Ok(AttributeKernel::new(kernel.attribute(), probs)?)
}

/// A randomized equitable goal: balanced kernel plus a tabular score with
/// exact parity, alongside a policy to evaluate against it.
#[derive(Debug, Clone)]
pub struct EquitableInstance {
    pub goal: TabularJoint,
    pub kernel: AttributeKernel,
    pub score: TestFunction,
    pub policy: DialoguePolicy,
}

/// Draws a goal, balances the kernel, then shrinks whichever score column has
/// the larger conditional mean onto the other so score parity holds exactly.
pub fn random_equitable_instance(
    rng: &mut ChaCha8Rng,
    limits: GeneratorLimits,
) -> Result<EquitableInstance> {
    let n_contexts = rng.random_range(1..=limits.max_contexts);
    let n_dialogues = rng.random_range(1..=limits.max_dialogues);
    let contexts = ids("c", n_contexts);
    let dialogues = ids("d", n_dialogues);

    let goal = random_joint(rng, &contexts, &dialogues)?;
    let kernel = balance_kernel(&goal, &random_interior_kernel(rng, "F", &contexts)?)?;

    let mut table: BTreeMap<String, [f64; 2]> = dialogues
        .iter()
        .map(|d| (d.clone(), [rng.random::<f64>(), rng.random::<f64>()]))
        .collect();
    let draft = TestFunction::tabular("s", table.clone())?;
    let report = parity_gap(&goal, &kernel, &draft)?;
    let (e0, e1) = (report.expectation_a0, report.expectation_a1);
    if e1 > e0 && e1 > 0.0 {
        for values in table.values_mut() {
            values[1] *= e0 / e1;
        }
    } else if e0 > e1 && e0 > 0.0 {
        for values in table.values_mut() {
            values[0] *= e1 / e0;
        }
    }

    Ok(EquitableInstance {
        goal,
        kernel,
        score: TestFunction::tabular("s", table)?,
        policy: random_policy(rng, "theta", &contexts, &dialogues)?,
    })
}

/// A human distribution in the consensus-labeling regime: the attribute is a
/// deterministic function of the context, contexts with the attribute emit
/// only verbalizing dialogues, and contexts without it emit only
/// non-verbalizing ones. The identifier reproduces the attribute from the
/// dialogue with probability 1.
#[derive(Debug, Clone)]
pub struct LabeledWorld {
    pub human: TabularJoint,
    pub kernel: AttributeKernel,
    pub identifier: IdentifierFunction,
    pub contexts: Vec<String>,
    pub dialogues: Vec<String>,
}

pub fn random_labeled_world(
    rng: &mut ChaCha8Rng,
    limits: GeneratorLimits,
) -> Result<LabeledWorld> {
    let n_contexts = rng.random_range(2..=limits.max_contexts.max(2));
    let n_dialogues = rng.random_range(2..=limits.max_dialogues.max(2));
    let contexts = ids("c", n_contexts);
    let dialogues = ids("d", n_dialogues);

    let attribute_contexts = rng.random_range(1..n_contexts);
    let verbal_dialogues = rng.random_range(1..n_dialogues);
    let (pool1, pool0) = dialogues.split_at(verbal_dialogues);

    let marginal = random_simplex(rng, n_contexts);
    let mut conditionals = BTreeMap::new();
    let mut kernel_probs = BTreeMap::new();
    for (i, context) in contexts.iter().enumerate() {
        let pool = if i < attribute_contexts { pool1 } else { pool0 };
        let probs = random_simplex(rng, pool.len());
        conditionals.insert(
            context.clone(),
            pool.iter().cloned().zip(probs.iter().copied()).collect(),
        );
        kernel_probs.insert(
            context.clone(),
            if i < attribute_contexts { 1.0 } else { 0.0 },
        );
    }
    let human = TabularJoint::new(
        contexts
            .iter()
            .cloned()
            .zip(marginal.iter().copied())
            .collect(),
        conditionals,
    )?;
    let kernel = AttributeKernel::new("F", kernel_probs)?;
    let identifier = IdentifierFunction::from_table(
        "v_F",
        dialogues
            .iter()
            .enumerate()
            .map(|(j, d)| (d.clone(), u8::from(j < verbal_dialogues)))
            .collect(),
    )?;
    Ok(LabeledWorld {
        human,
        kernel,
        identifier,
        contexts,
        dialogues,
    })
}

/// Random human world with an interior (non-deterministic) attribute kernel.
pub fn random_human_instance(
    rng: &mut ChaCha8Rng,
    limits: GeneratorLimits,
) -> Result<(TabularJoint, AttributeKernel, Vec<String>, Vec<String>)> {
    let n_contexts = rng.random_range(1..=limits.max_contexts);
    let n_dialogues = rng.random_range(1..=limits.max_dialogues);
    let contexts = ids("c", n_contexts);
    let dialogues = ids("d", n_dialogues);
    let human = random_joint(rng, &contexts, &dialogues)?;
    let kernel = random_interior_kernel(rng, "F", &contexts)?;
    Ok((human, kernel, contexts, dialogues))
}

/// Random tabular test over the dialogue universe.
pub fn random_tabular_test(rng: &mut ChaCha8Rng, dialogues: &[String]) -> Result<TestFunction> {
    Ok(TestFunction::tabular(
        "h",
        dialogues
            .iter()
            .map(|d| (d.clone(), [rng.random::<f64>(), rng.random::<f64>()]))
            .collect(),
    )?)
}
