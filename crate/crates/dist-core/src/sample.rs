use std::collections::BTreeMap;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{DistError, Result};
use crate::joint::TabularJoint;
use crate::kernel::AttributeKernel;

/// RNG contract shared by every seeded operation in the workspace.
///
/// The generator is ChaCha8, keyed from the 64-bit seed via `seed_from_u64`.
/// Item `index` of a seeded computation draws from stream `index` of that
/// keyed generator, so each item sees an independent substream: draws are
/// order-independent and parallel evaluation cannot change results.
pub fn substream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Inverse-CDF draw from `(item, probability)` pairs in iteration order.
///
/// Falls back to the last item when accumulated rounding leaves `u` past the
/// final cumulative bound.
pub fn pick_weighted<'a, I>(pairs: I, u: f64) -> Option<&'a str>
where
    I: IntoIterator<Item = (&'a str, f64)>,
{
    let mut cumulative = 0.0;
    let mut last = None;
    for (item, p) in pairs {
        cumulative += p;
        last = Some(item);
        if u < cumulative {
            return last;
        }
    }
    last
}

/// One sampled record: a context, a dialogue, and per-attribute values.
#[derive(Debug, Clone, PartialEq)]
pub struct Draw {
    pub context: String,
    pub dialogue: String,
    pub attributes: BTreeMap<String, u8>,
}

impl Draw {
    pub fn attribute(&self, name: &str) -> Option<u8> {
        self.attributes.get(name).copied()
    }
}

/// An i.i.d. sample of (context, dialogue, attributes) records plus the seed
/// that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    draws: Vec<Draw>,
    seed: u64,
}

impl Sample {
    pub fn new(draws: Vec<Draw>, seed: u64) -> Result<Self> {
        if draws.is_empty() {
            return Err(DistError::EmptySample);
        }
        Ok(Self { draws, seed })
    }

    pub fn draws(&self) -> &[Draw] {
        &self.draws
    }

    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Draws `m` i.i.d. records from the joint, with attribute values sampled per
/// record from each kernel conditional on the drawn context.
///
/// Record `i` consumes, from [`substream`]`(seed, i)`: one uniform for the
/// context, one for the dialogue, then one per kernel in argument order.
/// Output is bit-identical for identical `(joint, kernels, m, seed)`.
pub fn draw_sample(
    joint: &TabularJoint,
    kernels: &[AttributeKernel],
    m: usize,
    seed: u64,
) -> Result<Sample> {
    if m == 0 {
        return Err(DistError::EmptySample);
    }
    for (context, prob) in joint.contexts() {
        if *prob > 0.0 {
            for kernel in kernels {
                kernel.prob_given(context)?;
            }
        }
    }
    let mut draws = Vec::with_capacity(m);
    for i in 0..m {
        let mut rng = substream(seed, i as u64);
        let u_context: f64 = rng.random();
        let context = pick_weighted(
            joint.contexts().iter().map(|(c, p)| (c.as_str(), *p)),
            u_context,
        )
        .expect("joint has non-empty support")
        .to_string();
        let conditional = joint
            .conditional(&context)
            .ok_or_else(|| DistError::MissingConditional {
                context: context.clone(),
            })?;
        let u_dialogue: f64 = rng.random();
        let dialogue = pick_weighted(
            conditional.iter().map(|(d, p)| (d.as_str(), *p)),
            u_dialogue,
        )
        .expect("conditional is non-empty")
        .to_string();
        let mut attributes = BTreeMap::new();
        for kernel in kernels {
            let p1 = kernel.prob_given(&context)?;
            let u_attr: f64 = rng.random();
            attributes.insert(kernel.attribute().to_string(), u8::from(u_attr < p1));
        }
        draws.push(Draw {
            context,
            dialogue,
            attributes,
        });
    }
    Sample::new(draws, seed)
}
