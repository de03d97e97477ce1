use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{CorpusError, Result};

/// Role tag for one turn, when the corpus carries them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TurnRole {
    Q,
    A,
}

/// One game dialogue: a context reference (e.g. an image id), the turn texts,
/// and tri-state attribute labels (absent key = unlabeled).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusRecord {
    pub id: String,
    pub context: String,
    pub turns: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roles: Option<Vec<TurnRole>>,
}

impl CorpusRecord {
    /// All turns joined for whole-dialogue text evaluation.
    pub fn joined_turns(&self) -> String {
        self.turns.join(" ")
    }

    pub fn label(&self, attribute: &str) -> Option<u8> {
        self.labels.get(attribute).copied()
    }

    fn validate(&self, line: usize) -> Result<()> {
        if self.turns.is_empty() {
            return Err(CorpusError::Parse {
                line,
                message: format!("record {:?} has no turns", self.id),
            });
        }
        for (attribute, value) in &self.labels {
            if *value > 1 {
                return Err(CorpusError::Parse {
                    line,
                    message: format!(
                        "record {:?}: label {attribute:?} = {value}, expected 0 or 1",
                        self.id
                    ),
                });
            }
        }
        if let Some(roles) = &self.roles {
            if roles.len() != self.turns.len() {
                return Err(CorpusError::Parse {
                    line,
                    message: format!(
                        "record {:?}: {} roles for {} turns",
                        self.id,
                        roles.len(),
                        self.turns.len()
                    ),
                });
            }
        }
        Ok(())
    }
}

/// Where a corpus came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub source: String,
    pub loaded_at_unix: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Corpus {
    records: Vec<CorpusRecord>,
    provenance: Provenance,
}

impl Corpus {
    pub fn new(records: Vec<CorpusRecord>, source: impl Into<String>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (index, record) in records.iter().enumerate() {
            record.validate(index + 1)?;
            if !seen.insert(record.id.clone()) {
                return Err(CorpusError::DuplicateId {
                    id: record.id.clone(),
                    line: index + 1,
                });
            }
        }
        Ok(Self {
            records,
            provenance: Provenance {
                source: source.into(),
                loaded_at_unix: SystemTime::now()
                    .duration_since(UNIX_EPOCH)
                    .map(|d| d.as_secs())
                    .unwrap_or(0),
            },
        })
    }

    pub fn records(&self) -> &[CorpusRecord] {
        &self.records
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Record indices grouped by context reference, groups and members in
    /// deterministic order (context id, then record id).
    pub fn context_groups(&self) -> Vec<(String, Vec<usize>)> {
        let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
        for (index, record) in self.records.iter().enumerate() {
            groups.entry(record.context.clone()).or_default().push(index);
        }
        let mut groups: Vec<(String, Vec<usize>)> = groups.into_iter().collect();
        for (_, members) in &mut groups {
            members.sort_by(|a, b| self.records[*a].id.cmp(&self.records[*b].id));
        }
        groups
    }

    /// New corpus keeping records in their current order, selected by index.
    pub(crate) fn subset(&self, keep: &BTreeSet<usize>, source: String) -> Corpus {
        Corpus {
            records: self
                .records
                .iter()
                .enumerate()
                .filter(|(i, _)| keep.contains(i))
                .map(|(_, r)| r.clone())
                .collect(),
            provenance: Provenance {
                source,
                loaded_at_unix: self.provenance.loaded_at_unix,
            },
        }
    }

    pub(crate) fn with_records(&self, records: Vec<CorpusRecord>, source: String) -> Corpus {
        Corpus {
            records,
            provenance: Provenance {
                source,
                loaded_at_unix: self.provenance.loaded_at_unix,
            },
        }
    }
}

/// Parses a JSONL corpus: one record object per line, blank lines ignored.
/// Malformed lines are reported with their 1-based line number.
pub fn load_corpus(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let text = fs::read_to_string(path)?;
    let mut records = Vec::new();
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    for (number, line) in text.lines().enumerate() {
        let number = number + 1;
        if line.trim().is_empty() {
            continue;
        }
        let record: CorpusRecord =
            serde_json::from_str(line).map_err(|e| CorpusError::Parse {
                line: number,
                message: e.to_string(),
            })?;
        record.validate(number)?;
        if let Some(_first) = seen.insert(record.id.clone(), number) {
            return Err(CorpusError::DuplicateId {
                id: record.id,
                line: number,
            });
        }
        records.push(record);
    }
    Ok(Corpus {
        records,
        provenance: Provenance {
            source: path.display().to_string(),
            loaded_at_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        },
    })
}

/// Writes a corpus as JSONL (UTF-8, LF, one compact object per line).
/// Identical corpora serialize byte-identically.
pub fn save_corpus(corpus: &Corpus, path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    for record in corpus.records() {
        out.push_str(&serde_json::to_string(record).map_err(|e| CorpusError::Parse {
            line: 0,
            message: e.to_string(),
        })?);
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        use std::io::Write;
        let mut file = tempfile::NamedTempFile::new().unwrap();
        file.write_all(content.as_bytes()).unwrap();
        file
    }

    #[test]
    fn loads_two_line_file() {
        let file = write_temp(
            "{\"id\":\"g1\",\"context\":\"img_001\",\"turns\":[\"is it a person?\",\"yes\"],\"labels\":{\"F\":1}}\n\
             {\"id\":\"g2\",\"context\":\"img_002\",\"turns\":[\"is it red?\"]}\n",
        );
        let corpus = load_corpus(file.path()).unwrap();
        assert_eq!(corpus.len(), 2);
        assert_eq!(corpus.records()[0].label("F"), Some(1));
        assert_eq!(corpus.records()[1].label("F"), None);
    }

    #[test]
    fn missing_turns_reports_line_number() {
        let file = write_temp(
            "{\"id\":\"g1\",\"context\":\"x\",\"turns\":[\"q\"]}\n\
             {\"id\":\"g2\",\"context\":\"x\"}\n",
        );
        match load_corpus(file.path()).unwrap_err() {
            CorpusError::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_file_is_an_empty_corpus() {
        let file = write_temp("");
        let corpus = load_corpus(file.path()).unwrap();
        assert!(corpus.is_empty());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let file = write_temp(
            "{\"id\":\"g1\",\"context\":\"x\",\"turns\":[\"q\"]}\n\
             {\"id\":\"g1\",\"context\":\"y\",\"turns\":[\"q\"]}\n",
        );
        assert!(matches!(
            load_corpus(file.path()).unwrap_err(),
            CorpusError::DuplicateId { line: 2, .. }
        ));
    }

    #[test]
    fn save_load_round_trip_is_byte_stable() {
        let records = vec![CorpusRecord {
            id: "g1".into(),
            context: "img".into(),
            turns: vec!["is she there?".into(), "yes".into()],
            labels: [("F".to_string(), 1)].into(),
            roles: Some(vec![TurnRole::Q, TurnRole::A]),
        }];
        let corpus = Corpus::new(records, "test").unwrap();
        let file = tempfile::NamedTempFile::new().unwrap();
        save_corpus(&corpus, file.path()).unwrap();
        let first = fs::read(file.path()).unwrap();
        let reloaded = load_corpus(file.path()).unwrap();
        assert_eq!(reloaded.records(), corpus.records());
        save_corpus(&reloaded, file.path()).unwrap();
        assert_eq!(fs::read(file.path()).unwrap(), first);
    }
}
