use std::collections::{BTreeMap, BTreeSet};

use crate::error::{DistError, Result};
use crate::joint::normalize_values;

/// A dialogue policy: per-context distribution over dialogues.
#[derive(Debug, Clone, PartialEq)]
pub struct DialoguePolicy {
    id: String,
    kernel: BTreeMap<String, BTreeMap<String, f64>>,
}

impl DialoguePolicy {
    pub fn new(
        id: impl Into<String>,
        mut kernel: BTreeMap<String, BTreeMap<String, f64>>,
    ) -> Result<Self> {
        let id = id.into();
        for (context, dist) in &mut kernel {
            normalize_values(
                &format!("policy {id:?} distribution for context {context:?}"),
                dist.values_mut().collect(),
            )?;
        }
        Ok(Self { id, kernel })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn distribution(&self, context: &str) -> Option<&BTreeMap<String, f64>> {
        self.kernel.get(context)
    }

    pub fn kernel(&self) -> &BTreeMap<String, BTreeMap<String, f64>> {
        &self.kernel
    }

    /// True when every listed context has a distribution.
    pub fn covers<'a>(&self, contexts: impl IntoIterator<Item = &'a str>) -> bool {
        contexts.into_iter().all(|c| self.kernel.contains_key(c))
    }
}

/// Finite, ordered hypothesis space of dialogue policies.
#[derive(Debug, Clone)]
pub struct HypothesisSpace {
    policies: Vec<DialoguePolicy>,
}

impl HypothesisSpace {
    pub fn new(policies: Vec<DialoguePolicy>) -> Result<Self> {
        if policies.is_empty() {
            return Err(DistError::EmptyHypothesisSpace);
        }
        let mut seen = BTreeSet::new();
        for policy in &policies {
            if !seen.insert(policy.id().to_string()) {
                return Err(DistError::DuplicatePolicyId {
                    id: policy.id().to_string(),
                });
            }
        }
        Ok(Self { policies })
    }

    pub fn policies(&self) -> &[DialoguePolicy] {
        &self.policies
    }

    pub fn len(&self) -> usize {
        self.policies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.policies.is_empty()
    }
}
