//! Consensus attribute labeling over context groups.

use equity_metrics::IdentifierFunction;

use crate::error::Result;
use crate::record::Corpus;

/// Labels every record of every context group: the group gets `attribute = 1`
/// exactly when every one of its records verbalizes the attribute (at least
/// one word-list token somewhere in its turns), and 0 otherwise.
///
/// Idempotent, and independent of record order within a group.
pub fn label_attribute(
    corpus: &Corpus,
    attribute: &str,
    identifier: &IdentifierFunction,
) -> Result<Corpus> {
    let mut records = corpus.records().to_vec();
    for (_, members) in corpus.context_groups() {
        let mut consensus = 1u8;
        for &index in &members {
            if identifier.eval(&records[index].joined_turns())? == 0 {
                consensus = 0;
                break;
            }
        }
        for &index in &members {
            records[index]
                .labels
                .insert(attribute.to_string(), consensus);
        }
    }
    Ok(corpus.with_records(records, format!("label({attribute})")))
}
