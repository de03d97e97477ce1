use std::collections::{BTreeMap, BTreeSet};

use crate::error::{EquityError, Result};

/// Lowercases and splits on Unicode whitespace and ASCII punctuation.
///
/// This is the tokenizer behind word-list identifiers and the corpus lexical
/// metrics: exact token match, no stemming.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| c.is_whitespace() || c.is_ascii_punctuation())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_lowercase())
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
enum IdentifierSource {
    /// Scans raw dialogue text for any of the listed tokens.
    WordList(BTreeSet<String>),
    /// Explicit verbalization bit per dialogue id, for tabular dialogues.
    Table(BTreeMap<String, u8>),
}

/// Binary detector of whether a dialogue verbalizes the protected attribute.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentifierFunction {
    name: String,
    source: IdentifierSource,
}

impl IdentifierFunction {
    pub fn from_words<I, S>(name: impl Into<String>, words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            name: name.into(),
            source: IdentifierSource::WordList(
                words.into_iter().map(|w| w.into().to_lowercase()).collect(),
            ),
        }
    }

    pub fn from_table(name: impl Into<String>, table: BTreeMap<String, u8>) -> Result<Self> {
        for value in table.values() {
            if *value > 1 {
                return Err(EquityError::InvalidAttributeValue { value: *value });
            }
        }
        Ok(Self {
            name: name.into(),
            source: IdentifierSource::Table(table),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Word-list identifiers evaluate raw dialogue text; tabular identifiers
    /// evaluate dialogue ids.
    pub fn takes_raw_text(&self) -> bool {
        matches!(self.source, IdentifierSource::WordList(_))
    }

    /// `v(dialogue)` in {0, 1}.
    pub fn eval(&self, dialogue: &str) -> Result<u8> {
        match &self.source {
            IdentifierSource::WordList(words) => Ok(u8::from(
                tokenize(dialogue).iter().any(|t| words.contains(t)),
            )),
            IdentifierSource::Table(table) => {
                table
                    .get(dialogue)
                    .copied()
                    .ok_or_else(|| EquityError::MissingScoreEntry {
                        name: self.name.clone(),
                        dialogue: dialogue.to_string(),
                    })
            }
        }
    }

    pub fn word_list(&self) -> Option<&BTreeSet<String>> {
        match &self.source {
            IdentifierSource::WordList(words) => Some(words),
            IdentifierSource::Table(_) => None,
        }
    }
}

/// `s(d, a) = |a - v(d)|`: 0 exactly when the dialogue's verbalization agrees
/// with the attribute.
pub fn identifier_score(v: &IdentifierFunction, dialogue: &str, attribute: u8) -> Result<u8> {
    if attribute > 1 {
        return Err(EquityError::InvalidAttributeValue { value: attribute });
    }
    Ok(attribute.abs_diff(v.eval(dialogue)?))
}

#[derive(Debug, Clone, PartialEq)]
enum TestForm {
    /// Per-dialogue values for attribute 0 and 1.
    Tabular(BTreeMap<String, [f64; 2]>),
    Identifier(IdentifierFunction),
}

/// A test (equivalently, scoring) function mapping (dialogue, attribute) into
/// [0, 1].
///
/// The unknown-effect slot of the underlying evaluation model is degenerate
/// here: a single-point distribution that cannot change the output, kept only
/// as an optional label.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    name: String,
    form: TestForm,
    unknown_effect: Option<String>,
}

impl TestFunction {
    pub fn tabular(name: impl Into<String>, table: BTreeMap<String, [f64; 2]>) -> Result<Self> {
        let name = name.into();
        for (dialogue, values) in &table {
            for value in values {
                if !value.is_finite() || *value < 0.0 || *value > 1.0 {
                    return Err(EquityError::ScoreOutOfRange {
                        name: name.clone(),
                        dialogue: dialogue.clone(),
                        value: *value,
                    });
                }
            }
        }
        Ok(Self {
            name,
            form: TestForm::Tabular(table),
            unknown_effect: None,
        })
    }

    pub fn identifier(v: IdentifierFunction) -> Self {
        Self {
            name: format!("|a - {}(d)|", v.name()),
            form: TestForm::Identifier(v),
        unknown_effect: None,
        }
    }

    /// Attaches a label for the degenerate unknown-effect point mass.
    pub fn with_unknown_effect(mut self, label: impl Into<String>) -> Self {
        self.unknown_effect = Some(label.into());
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn unknown_effect(&self) -> Option<&str> {
        self.unknown_effect.as_deref()
    }

    /// True when `dialogue` passed to [`TestFunction::eval`] should be raw
    /// text rather than a dialogue id.
    pub fn takes_raw_text(&self) -> bool {
        match &self.form {
            TestForm::Tabular(_) => false,
            TestForm::Identifier(v) => v.takes_raw_text(),
        }
    }

    /// `h(dialogue, attribute)` in [0, 1].
    pub fn eval(&self, dialogue: &str, attribute: u8) -> Result<f64> {
        if attribute > 1 {
            return Err(EquityError::InvalidAttributeValue { value: attribute });
        }
        match &self.form {
            TestForm::Tabular(table) => table
                .get(dialogue)
                .map(|values| values[attribute as usize])
                .ok_or_else(|| EquityError::MissingScoreEntry {
                    name: self.name.clone(),
                    dialogue: dialogue.to_string(),
                }),
            TestForm::Identifier(v) => {
                Ok(f64::from(identifier_score(v, dialogue, attribute)?))
            }
        }
    }

    pub fn table(&self) -> Option<&BTreeMap<String, [f64; 2]>> {
        match &self.form {
            TestForm::Tabular(table) => Some(table),
            TestForm::Identifier(_) => None,
        }
    }
}
