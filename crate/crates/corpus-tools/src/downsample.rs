//! Randomized filtering that balances attribute occurrence over context
//! groups. Both samplers return subsets of the input corpus and are
//! deterministic under their seed.

use std::collections::BTreeSet;

use rand::Rng;

use dist_core::{substream, ChaCha8Rng};

use crate::error::{CorpusError, Result};
use crate::record::Corpus;

/// Group consensus label: Some(v) when every member record carries label `v`,
/// None when members are unlabeled or disagree.
fn group_label(corpus: &Corpus, members: &[usize], attribute: &str) -> Option<u8> {
    let mut consensus: Option<u8> = None;
    for &index in members {
        let value = corpus.records()[index].label(attribute)?;
        match consensus {
            None => consensus = Some(value),
            Some(previous) if previous != value => return None,
            Some(_) => {}
        }
    }
    consensus
}

/// First `k` positions of a seeded partial Fisher-Yates shuffle of `0..n`.
fn choose(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    let mut indices: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        indices.swap(i, j);
    }
    indices.truncate(k);
    indices
}

/// Training downsampler: keeps only context groups labeled 1 for exactly one
/// of the listed attributes, then subsamples so every attribute keeps the
/// same number of groups. Groups labeled 1 for several listed attributes are
/// dropped, which is what keeps the per-attribute counts exactly equal.
///
/// Attribute `i` draws its subsample from `substream(seed, i)`.
pub fn downsample_train(corpus: &Corpus, attributes: &[String], seed: u64) -> Result<Corpus> {
    let groups = corpus.context_groups();
    let mut candidates: Vec<Vec<&(String, Vec<usize>)>> =
        vec![Vec::new(); attributes.len()];
    for group in &groups {
        let positives: Vec<usize> = attributes
            .iter()
            .enumerate()
            .filter(|(_, attr)| group_label(corpus, &group.1, attr) == Some(1))
            .map(|(i, _)| i)
            .collect();
        if let [only] = positives.as_slice() {
            candidates[*only].push(group);
        }
    }
    let mut quota = usize::MAX;
    for (attribute, groups_for_attr) in attributes.iter().zip(&candidates) {
        if groups_for_attr.is_empty() {
            return Err(CorpusError::EmptyAttribute {
                attribute: attribute.clone(),
            });
        }
        quota = quota.min(groups_for_attr.len());
    }
    let mut keep = BTreeSet::new();
    for (i, groups_for_attr) in candidates.iter().enumerate() {
        let mut rng = substream(seed, i as u64);
        for position in choose(&mut rng, groups_for_attr.len(), quota) {
            keep.extend(groups_for_attr[position].1.iter().copied());
        }
    }
    Ok(corpus.subset(&keep, format!("downsample-train(seed={seed})")))
}

/// Evaluation downsampler for a single attribute: equalizes the number of
/// context groups labeled 1 and labeled 0 by subsampling the majority side.
/// Unlabeled or mixed groups are dropped.
///
/// The label-1 side draws from `substream(seed, 0)`, the label-0 side from
/// `substream(seed, 1)`.
pub fn downsample_eval(corpus: &Corpus, attribute: &str, seed: u64) -> Result<Corpus> {
    let groups = corpus.context_groups();
    let mut ones = Vec::new();
    let mut zeros = Vec::new();
    for group in &groups {
        match group_label(corpus, &group.1, attribute) {
            Some(1) => ones.push(group),
            Some(0) => zeros.push(group),
            _ => {}
        }
    }
    for (value, side) in [(1u8, &ones), (0u8, &zeros)] {
        if side.is_empty() {
            return Err(CorpusError::MissingLabelValue {
                attribute: attribute.to_string(),
                value,
            });
        }
    }
    let quota = ones.len().min(zeros.len());
    let mut keep = BTreeSet::new();
    for (stream, side) in [(0u64, &ones), (1u64, &zeros)] {
        let mut rng = substream(seed, stream);
        for position in choose(&mut rng, side.len(), quota) {
            keep.extend(side[position].1.iter().copied());
        }
    }
    Ok(corpus.subset(&keep, format!("downsample-eval({attribute},seed={seed})")))
}
