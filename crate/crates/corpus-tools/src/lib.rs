//! Dialogue-corpus pipeline: JSONL ingestion, consensus attribute labeling,
//! the two balancing downsamplers, diversity metrics, and empirical parity.
//!
//! A corpus is a list of game dialogues keyed by a context reference (for
//! visual dialogue, an image id). Labeling assigns a binary attribute to
//! every record of a context group by annotator consensus: the group gets 1
//! only when every one of its dialogues verbalizes the attribute. That rule
//! makes the attribute a deterministic function of the dialogue text, which
//! is exactly the regime where the balanced-goal construction in
//! `learning-theory` carries zero parity gap.
//!
//! Grouping uses the record's context reference; records sharing an image
//! but aimed at different goal objects therefore share a group.

mod downsample;
mod error;
mod label;
mod metrics;
mod parity;
mod record;
pub mod wordlists;

pub use downsample::{downsample_eval, downsample_train};
pub use error::{CorpusError, Result};
pub use label::label_attribute;
pub use metrics::{corpus_metrics, CorpusMetrics, QuestionSelector};
pub use parity::{empirical_parity, paired_empirical_td, EmpiricalParity};
pub use record::{load_corpus, save_corpus, Corpus, CorpusRecord, Provenance, TurnRole};
