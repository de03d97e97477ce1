//! Randomized checks that twice the test divergence bounds the parity gap on
//! equitable goals, and that the Monte-Carlo estimator is calibrated.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use dist_core::{
    joint_of_policy, substream, AttributeKernel, DialoguePolicy, TabularJoint,
};
use equity_metrics::{
    is_equitable_goal, parity_gap, td_exact, td_monte_carlo, TestFunction,
};

fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 0.05).collect();
    let sum: f64 = raw.iter().sum();
    raw.iter().map(|v| v / sum).collect()
}

struct Instance {
    goal: TabularJoint,
    kernel: AttributeKernel,
    score: TestFunction,
    policy: DialoguePolicy,
}

/// Conditional expectation E[s(D, a) | A = a], written out independently of
/// the library's parity machinery.
fn conditional_mean(
    goal: &TabularJoint,
    kernel: &BTreeMap<String, f64>,
    table: &BTreeMap<String, [f64; 2]>,
    a: usize,
) -> f64 {
    let mut mass = 0.0;
    let mut weighted = 0.0;
    for (context, pc) in goal.contexts() {
        let k1 = kernel[context];
        let ka = if a == 1 { k1 } else { 1.0 - k1 };
        mass += pc * ka;
        for (dialogue, pd) in goal.conditional(context).unwrap() {
            weighted += pc * ka * pd * table[dialogue][a];
        }
    }
    weighted / mass
}

/// Builds a balanced goal with exact score parity: the kernel is rescaled so
/// Pr(A=1) = 1/2, then whichever score column has the larger conditional mean
/// is shrunk onto the other.
fn random_equitable_instance(seed: u64) -> Instance {
    let mut rng = substream(seed, 0);
    let n_contexts = rng.random_range(1..=4usize);
    let n_dialogues = rng.random_range(1..=4usize);
    let context_ids: Vec<String> = (0..n_contexts).map(|i| format!("c{i}")).collect();
    let dialogue_ids: Vec<String> = (0..n_dialogues).map(|i| format!("d{i}")).collect();

    let marginal = random_simplex(&mut rng, n_contexts);
    let contexts: Vec<(String, f64)> = context_ids
        .iter()
        .cloned()
        .zip(marginal.iter().copied())
        .collect();
    let mut conditionals = BTreeMap::new();
    for id in &context_ids {
        let probs = random_simplex(&mut rng, n_dialogues);
        conditionals.insert(
            id.clone(),
            dialogue_ids
                .iter()
                .cloned()
                .zip(probs.iter().copied())
                .collect::<BTreeMap<String, f64>>(),
        );
    }
    let goal = TabularJoint::new(contexts.clone(), conditionals).unwrap();

    let mut kernel_probs: BTreeMap<String, f64> = context_ids
        .iter()
        .map(|id| (id.clone(), rng.random::<f64>()))
        .collect();
    let p1: f64 = contexts.iter().map(|(id, p)| p * kernel_probs[id]).sum();
    for value in kernel_probs.values_mut() {
        if p1 >= 0.5 {
            *value /= 2.0 * p1;
        } else {
            *value = 1.0 - (1.0 - *value) / (2.0 * (1.0 - p1));
        }
    }

    let mut table: BTreeMap<String, [f64; 2]> = dialogue_ids
        .iter()
        .map(|id| (id.clone(), [rng.random::<f64>(), rng.random::<f64>()]))
        .collect();
    let e0 = conditional_mean(&goal, &kernel_probs, &table, 0);
    let e1 = conditional_mean(&goal, &kernel_probs, &table, 1);
    if e1 > e0 && e1 > 0.0 {
        let factor = e0 / e1;
        for values in table.values_mut() {
            values[1] *= factor;
        }
    } else if e0 > e1 && e0 > 0.0 {
        let factor = e1 / e0;
        for values in table.values_mut() {
            values[0] *= factor;
        }
    }

    let mut policy_kernel = BTreeMap::new();
    for id in &context_ids {
        let probs = random_simplex(&mut rng, n_dialogues);
        policy_kernel.insert(
            id.clone(),
            dialogue_ids
                .iter()
                .cloned()
                .zip(probs.iter().copied())
                .collect::<BTreeMap<String, f64>>(),
        );
    }

    Instance {
        goal,
        kernel: AttributeKernel::new("F", kernel_probs).unwrap(),
        score: TestFunction::tabular("s", table).unwrap(),
        policy: DialoguePolicy::new("theta", policy_kernel).unwrap(),
    }
}

/// Parity gap of the learned joint never exceeds twice the test divergence
/// against an equitable goal, across 1000 randomized instances.
#[test]
fn twice_td_bounds_parity_gap_on_equitable_goals() {
    for trial in 0..1000u64 {
        let instance = random_equitable_instance(40_000 + trial);
        let check = is_equitable_goal(&instance.goal, &instance.kernel, &instance.score, 1e-9)
            .unwrap();
        assert!(check.verdict, "trial {trial}: generator must emit equitable goals");

        let learned = joint_of_policy(&instance.policy, instance.goal.contexts()).unwrap();
        let gap = parity_gap(&learned, &instance.kernel, &instance.score)
            .unwrap()
            .gap;
        let td = td_exact(
            &instance.goal,
            &instance.kernel,
            &instance.policy,
            &instance.score,
        )
        .unwrap();
        assert!(
            gap <= 2.0 * td + 1e-9,
            "trial {trial}: gap {gap} > 2 * {td}"
        );
    }
}

/// The Monte-Carlo estimate lands within its Hoeffding half-width of the
/// exact value for at least confidence - 0.01 of 1000 seeds.
#[test]
fn monte_carlo_estimator_is_calibrated() {
    let instance = random_equitable_instance(123);
    let exact = td_exact(
        &instance.goal,
        &instance.kernel,
        &instance.policy,
        &instance.score,
    )
    .unwrap();
    let confidence = 0.99;
    let mut hits = 0;
    for seed in 0..1000u64 {
        let estimate = td_monte_carlo(
            &instance.goal,
            &instance.kernel,
            &instance.policy,
            &instance.score,
            2000,
            seed,
            confidence,
        )
        .unwrap();
        if (estimate.estimate - exact).abs() <= estimate.half_width {
            hits += 1;
        }
    }
    assert!(
        hits as f64 >= (confidence - 0.01) * 1000.0,
        "only {hits}/1000 seeds within the half-width"
    );
}
