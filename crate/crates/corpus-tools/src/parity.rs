//! Empirical parity and paired divergence over labeled corpora.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use equity_metrics::{ParityReport, TestFunction};

use crate::error::{CorpusError, Result};
use crate::record::{Corpus, CorpusRecord};

/// Evaluates the test on a record: word-list scores see the dialogue text,
/// tabular scores are keyed by record id.
fn record_score(record: &CorpusRecord, test: &TestFunction, attribute_value: u8) -> Result<f64> {
    let value = if test.takes_raw_text() {
        test.eval(&record.joined_turns(), attribute_value)?
    } else {
        test.eval(&record.id, attribute_value)?
    };
    Ok(value)
}

/// A [`ParityReport`] over labeled records, plus how many records were
/// excluded as unlabeled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalParity {
    pub parity: ParityReport,
    pub count_a0: usize,
    pub count_a1: usize,
    pub unlabeled: usize,
}

/// Conditional score means by attribute label over a corpus. Unlabeled
/// records are excluded and counted. Balance is judged against the empirical
/// Pr(A=1) at the given tolerance.
pub fn empirical_parity(
    corpus: &Corpus,
    attribute: &str,
    score: &TestFunction,
    balance_tol: f64,
) -> Result<EmpiricalParity> {
    let mut sums = [0.0f64; 2];
    let mut counts = [0usize; 2];
    let mut unlabeled = 0usize;
    for record in corpus.records() {
        match record.label(attribute) {
            Some(value) => {
                sums[value as usize] += record_score(record, score, value)?;
                counts[value as usize] += 1;
            }
            None => unlabeled += 1,
        }
    }
    for (value, count) in counts.iter().enumerate() {
        if *count == 0 {
            return Err(CorpusError::MissingLabelValue {
                attribute: attribute.to_string(),
                value: value as u8,
            });
        }
    }
    let e0 = sums[0] / counts[0] as f64;
    let e1 = sums[1] / counts[1] as f64;
    let pr_a1 = counts[1] as f64 / (counts[0] + counts[1]) as f64;
    Ok(EmpiricalParity {
        parity: ParityReport {
            attribute: attribute.to_string(),
            expectation_a0: e0,
            expectation_a1: e1,
            gap: (e1 - e0).abs(),
            balanced: (pr_a1 - 0.5).abs() <= balance_tol,
            pr_a1,
        },
        count_a0: counts[0],
        count_a1: counts[1],
        unlabeled,
    })
}

/// Mean |h(reference dialogue, a) - h(candidate dialogue, a)| over records
/// paired by id, using the reference corpus's labels. Unlabeled reference
/// records are skipped.
pub fn paired_empirical_td(
    reference: &Corpus,
    candidate: &Corpus,
    attribute: &str,
    test: &TestFunction,
) -> Result<f64> {
    let reference_ids: BTreeSet<&str> =
        reference.records().iter().map(|r| r.id.as_str()).collect();
    let candidate_ids: BTreeSet<&str> =
        candidate.records().iter().map(|r| r.id.as_str()).collect();
    if reference_ids != candidate_ids {
        return Err(CorpusError::Alignment {
            missing_in_candidate: reference_ids
                .difference(&candidate_ids)
                .map(|s| s.to_string())
                .collect(),
            missing_in_reference: candidate_ids
                .difference(&reference_ids)
                .map(|s| s.to_string())
                .collect(),
        });
    }
    let mut total = 0.0;
    let mut pairs = 0usize;
    for record in reference.records() {
        let Some(value) = record.label(attribute) else {
            continue;
        };
        let counterpart = candidate
            .records()
            .iter()
            .find(|r| r.id == record.id)
            .expect("id sets are equal");
        total += (record_score(record, test, value)?
            - record_score(counterpart, test, value)?)
        .abs();
        pairs += 1;
    }
    if pairs == 0 {
        return Err(CorpusError::MissingLabelValue {
            attribute: attribute.to_string(),
            value: 1,
        });
    }
    Ok(total / pairs as f64)
}
