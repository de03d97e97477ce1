//! Dialogue diversity metrics: lexical diversity, question diversity, and
//! repeated-question rate.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use equity_metrics::tokenize;

use crate::error::{CorpusError, Result};
use crate::record::{Corpus, CorpusRecord, TurnRole};

/// How question turns are identified within a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuestionSelector {
    /// Questions are the 1st, 3rd, 5th, ... turns (question/answer
    /// alternation); the default.
    #[default]
    OddTurns,
    /// Questions are the turns tagged `q`; records without role tags fall
    /// back to the positional rule.
    Tagged,
}

/// All three values are fractions in [0, 1]; the command line reports them as
/// percentages.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorpusMetrics {
    /// Distinct tokens over total tokens, across all turns of all records.
    pub ldiv: f64,
    /// Distinct question strings over total questions, across all records.
    pub qdiv: f64,
    /// Fraction of records containing at least one repeated question.
    pub repq: f64,
}

/// Question identity: lowercased with runs of whitespace collapsed.
fn normalize_question(text: &str) -> String {
    text.to_lowercase().split_whitespace().collect::<Vec<_>>().join(" ")
}

fn questions(record: &CorpusRecord, selector: QuestionSelector) -> Vec<String> {
    let tagged = match selector {
        QuestionSelector::OddTurns => None,
        QuestionSelector::Tagged => record.roles.as_ref(),
    };
    match tagged {
        Some(roles) => record
            .turns
            .iter()
            .zip(roles)
            .filter(|(_, role)| **role == TurnRole::Q)
            .map(|(turn, _)| normalize_question(turn))
            .collect(),
        None => record
            .turns
            .iter()
            .step_by(2)
            .map(|turn| normalize_question(turn))
            .collect(),
    }
}

pub fn corpus_metrics(corpus: &Corpus, selector: QuestionSelector) -> Result<CorpusMetrics> {
    if corpus.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let mut total_tokens = 0usize;
    let mut distinct_tokens = BTreeSet::new();
    let mut total_questions = 0usize;
    let mut distinct_questions = BTreeSet::new();
    let mut records_with_repeat = 0usize;
    for record in corpus.records() {
        for turn in &record.turns {
            for token in tokenize(turn) {
                total_tokens += 1;
                distinct_tokens.insert(token);
            }
        }
        let questions = questions(record, selector);
        let mut seen = BTreeSet::new();
        let mut repeated = false;
        for question in &questions {
            total_questions += 1;
            distinct_questions.insert(question.clone());
            if !seen.insert(question.clone()) {
                repeated = true;
            }
        }
        if repeated {
            records_with_repeat += 1;
        }
    }
    let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    Ok(CorpusMetrics {
        ldiv: ratio(distinct_tokens.len(), total_tokens),
        qdiv: ratio(distinct_questions.len(), total_questions),
        repq: ratio(records_with_repeat, corpus.len()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn question_only_record(id: &str, questions: &[&str]) -> CorpusRecord {
        CorpusRecord {
            id: id.into(),
            context: id.to_uppercase(),
            turns: questions.iter().map(|q| q.to_string()).collect(),
            labels: Default::default(),
            roles: Some(vec![TurnRole::Q; questions.len()]),
        }
    }

    /// The worked fixture: two all-question dialogues, one with a repeat.
    fn fixture() -> Corpus {
        Corpus::new(
            vec![
                question_only_record("d1", &["is it a person", "is it red"]),
                question_only_record("d2", &["is it a person", "is it a person"]),
            ],
            "fixture",
        )
        .unwrap()
    }

    #[test]
    fn tagged_fixture_hand_counts() {
        let metrics = corpus_metrics(&fixture(), QuestionSelector::Tagged).unwrap();
        assert_eq!(metrics.ldiv, 5.0 / 15.0);
        assert_eq!(metrics.qdiv, 0.5);
        assert_eq!(metrics.repq, 0.5);
    }

    #[test]
    fn odd_turns_takes_alternating_questions() {
        let record = CorpusRecord {
            id: "g".into(),
            context: "img".into(),
            turns: vec![
                "is it a person?".into(),
                "yes".into(),
                "is she on the left?".into(),
                "no".into(),
            ],
            labels: Default::default(),
            roles: None,
        };
        let corpus = Corpus::new(vec![record], "test").unwrap();
        let metrics = corpus_metrics(&corpus, QuestionSelector::OddTurns).unwrap();
        // 2 questions, both distinct; answers still count toward ldiv.
        assert_eq!(metrics.qdiv, 1.0);
        assert_eq!(metrics.repq, 0.0);
        // 11 tokens, 10 distinct ("is" repeats).
        assert!((metrics.ldiv - 10.0 / 11.0).abs() < 1e-15);
    }

    #[test]
    fn single_word_corpus_has_full_lexical_diversity() {
        let corpus = Corpus::new(vec![question_only_record("d1", &["person"])], "test").unwrap();
        let metrics = corpus_metrics(&corpus, QuestionSelector::Tagged).unwrap();
        assert_eq!(metrics.ldiv, 1.0);
        assert!(metrics.repq == 0.0 || metrics.repq == 1.0);
    }

    #[test]
    fn identical_questions_shrink_qdiv_to_one_over_total() {
        let corpus = Corpus::new(
            vec![
                question_only_record("d1", &["is it red", "is it red"]),
                question_only_record("d2", &["is it red"]),
            ],
            "test",
        )
        .unwrap();
        let metrics = corpus_metrics(&corpus, QuestionSelector::Tagged).unwrap();
        assert_eq!(metrics.qdiv, 1.0 / 3.0);
    }

    #[test]
    fn question_identity_ignores_case_and_spacing() {
        let corpus = Corpus::new(
            vec![question_only_record("d1", &["Is it RED", "is  it red"])],
            "test",
        )
        .unwrap();
        let metrics = corpus_metrics(&corpus, QuestionSelector::Tagged).unwrap();
        assert_eq!(metrics.repq, 1.0);
        assert_eq!(metrics.qdiv, 0.5);
    }

    #[test]
    fn empty_corpus_is_an_error() {
        let corpus = Corpus::new(vec![], "test").unwrap();
        assert!(matches!(
            corpus_metrics(&corpus, QuestionSelector::OddTurns).unwrap_err(),
            CorpusError::EmptyCorpus
        ));
    }
}
