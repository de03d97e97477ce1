//! JSON file model for test functions.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{EquityError, Result};
use crate::score::{IdentifierFunction, TestFunction};

/// On-disk score: either a per-dialogue table keyed by attribute value
/// (`{"name":"s","table":{"d1":{"0":1.0,"1":0.0}}}`) or a word-list
/// identifier (`{"name":"v_F","wordlist":["she","woman",...]}`).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScoreFile {
    Tabular {
        name: String,
        table: BTreeMap<String, BTreeMap<String, f64>>,
    },
    Identifier {
        name: String,
        wordlist: Vec<String>,
    },
}

impl ScoreFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn test_function(&self) -> Result<TestFunction> {
        match self {
            ScoreFile::Tabular { name, table } => {
                let mut converted = BTreeMap::new();
                for (dialogue, by_attr) in table {
                    let mut values = [f64::NAN; 2];
                    for (key, value) in by_attr {
                        let index: usize = match key.as_str() {
                            "0" => 0,
                            "1" => 1,
                            other => {
                                return Err(EquityError::InvalidScoreFile {
                                    message: format!(
                                        "dialogue {dialogue:?} has attribute key {other:?}, expected \"0\" or \"1\""
                                    ),
                                })
                            }
                        };
                        values[index] = *value;
                    }
                    if values.iter().any(|v| v.is_nan()) {
                        return Err(EquityError::InvalidScoreFile {
                            message: format!(
                                "dialogue {dialogue:?} must list values for both \"0\" and \"1\""
                            ),
                        });
                    }
                    converted.insert(dialogue.clone(), values);
                }
                TestFunction::tabular(name.clone(), converted)
            }
            ScoreFile::Identifier { name, wordlist } => Ok(TestFunction::identifier(
                IdentifierFunction::from_words(name.clone(), wordlist.iter().cloned()),
            )),
        }
    }
}
