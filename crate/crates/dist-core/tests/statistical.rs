//! Seeded statistical checks for the sampler and enumeration backbone.

use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use dist_core::{draw_sample, expectation, substream, AttributeKernel, TabularJoint};

fn random_simplex(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.random::<f64>() + 0.05).collect();
    let sum: f64 = raw.iter().sum();
    raw.iter().map(|v| v / sum).collect()
}

fn random_instance(seed: u64) -> (TabularJoint, AttributeKernel) {
    let mut rng = substream(seed, 0);
    let n_contexts = rng.random_range(1..=4usize);
    let n_dialogues = rng.random_range(1..=4usize);
    let marginal = random_simplex(&mut rng, n_contexts);
    let contexts: Vec<(String, f64)> = marginal
        .iter()
        .enumerate()
        .map(|(i, p)| (format!("c{i}"), *p))
        .collect();
    let mut conditionals = BTreeMap::new();
    for (id, _) in &contexts {
        let probs = random_simplex(&mut rng, n_dialogues);
        let dist: BTreeMap<String, f64> = probs
            .iter()
            .enumerate()
            .map(|(j, p)| (format!("d{j}"), *p))
            .collect();
        conditionals.insert(id.clone(), dist);
    }
    let joint = TabularJoint::new(contexts.clone(), conditionals).unwrap();
    let kernel = AttributeKernel::new(
        "F",
        contexts
            .iter()
            .map(|(id, _)| (id.clone(), rng.random::<f64>()))
            .collect(),
    )
    .unwrap();
    (joint, kernel)
}

/// Every (context, dialogue) atom's empirical frequency at m = 10_000 stays
/// within the Hoeffding radius for delta = 0.001 on at least 999 of 1000
/// seeded instances.
#[test]
fn sampler_frequencies_concentrate() {
    const M: usize = 10_000;
    let tolerance = ((2.0f64 / 0.001).ln() / (2.0 * M as f64)).sqrt();
    let mut violating_instances = 0;
    for trial in 0..1000u64 {
        let (joint, kernel) = random_instance(9000 + trial);
        let sample = draw_sample(&joint, &[kernel], M, trial).unwrap();
        let mut counts: BTreeMap<(String, String), usize> = BTreeMap::new();
        for draw in sample.draws() {
            *counts
                .entry((draw.context.clone(), draw.dialogue.clone()))
                .or_default() += 1;
        }
        let mut violated = false;
        for (context, c_prob) in joint.contexts() {
            for (dialogue, d_prob) in joint.conditional(context).unwrap() {
                let truth = c_prob * d_prob;
                let observed = counts
                    .get(&(context.clone(), dialogue.clone()))
                    .copied()
                    .unwrap_or(0) as f64
                    / M as f64;
                if (observed - truth).abs() > tolerance {
                    violated = true;
                }
            }
        }
        if violated {
            violating_instances += 1;
        }
    }
    assert!(
        violating_instances <= 1,
        "{violating_instances} of 1000 instances exceeded the Hoeffding radius {tolerance}"
    );
}

/// expectation(f + g) = expectation(f) + expectation(g) within 1e-12.
#[test]
fn expectation_is_linear() {
    for trial in 0..200u64 {
        let (joint, kernel) = random_instance(7000 + trial);
        let f = |c: &str, d: &str, a: u8| {
            (c.len() as f64 * 0.13 + d.as_bytes()[1] as f64 * 0.001) * f64::from(a + 1)
        };
        let g = |c: &str, d: &str, a: u8| {
            (d.len() as f64).sin().abs() * 0.5 + f64::from(a) * c.len() as f64 * 0.01
        };
        let lhs = expectation(&joint, &kernel, |c, d, a| f(c, d, a) + g(c, d, a)).unwrap();
        let rhs = expectation(&joint, &kernel, f).unwrap()
            + expectation(&joint, &kernel, g).unwrap();
        assert!((lhs - rhs).abs() < 1e-12, "trial {trial}: {lhs} vs {rhs}");
    }
}

/// Constructed joints carry total probability 1 within 1e-12, and pairing a
/// policy with a marginal preserves that marginal exactly.
#[test]
fn construction_invariants() {
    use dist_core::{joint_of_policy, DialoguePolicy};
    for trial in 0..200u64 {
        let (joint, _) = random_instance(5000 + trial);
        assert!((joint.total_probability() - 1.0).abs() <= 1e-12);

        let policy = DialoguePolicy::new(
            "p",
            joint
                .contexts()
                .iter()
                .filter_map(|(c, _)| joint.conditional(c).map(|m| (c.clone(), m.clone())))
                .collect(),
        )
        .unwrap();
        let rebuilt = joint_of_policy(&policy, joint.contexts()).unwrap();
        for ((id_a, p_a), (id_b, p_b)) in joint.contexts().iter().zip(rebuilt.contexts()) {
            assert_eq!(id_a, id_b);
            assert_eq!(p_a, p_b, "marginal must be recovered exactly");
        }
    }
}
