//! JSON file models for distributions, policies, and hypothesis spaces.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{DistError, Result};
use crate::joint::TabularJoint;
use crate::kernel::AttributeKernel;
use crate::policy::{DialoguePolicy, HypothesisSpace};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContextEntry {
    pub id: String,
    pub prob: f64,
}

/// On-disk distribution: a context marginal, dialogue conditionals, and any
/// number of named attribute kernels.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionFile {
    pub contexts: Vec<ContextEntry>,
    pub conditionals: BTreeMap<String, BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub attributes: BTreeMap<String, BTreeMap<String, f64>>,
}

impl DistributionFile {
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        fs::write(path, text)?;
        Ok(())
    }

    pub fn joint(&self) -> Result<TabularJoint> {
        let contexts = self
            .contexts
            .iter()
            .map(|e| (e.id.clone(), e.prob))
            .collect();
        TabularJoint::new(contexts, self.conditionals.clone())
    }

    pub fn kernel(&self, attribute: &str) -> Result<AttributeKernel> {
        let probs = self
            .attributes
            .get(attribute)
            .ok_or_else(|| DistError::KernelCoverage {
                attribute: attribute.to_string(),
                context: "<file has no such attribute>".to_string(),
            })?;
        AttributeKernel::new(attribute, probs.clone())
    }

    pub fn kernels(&self) -> Result<Vec<AttributeKernel>> {
        self.attributes
            .iter()
            .map(|(name, probs)| AttributeKernel::new(name.clone(), probs.clone()))
            .collect()
    }

    pub fn from_parts(joint: &TabularJoint, kernels: &[AttributeKernel]) -> Self {
        Self {
            contexts: joint
                .contexts()
                .iter()
                .map(|(id, prob)| ContextEntry {
                    id: id.clone(),
                    prob: *prob,
                })
                .collect(),
            conditionals: joint
                .contexts()
                .iter()
                .filter_map(|(id, _)| {
                    joint.conditional(id).map(|m| (id.clone(), m.clone()))
                })
                .collect(),
            attributes: kernels
                .iter()
                .map(|k| (k.attribute().to_string(), k.probs().clone()))
                .collect(),
        }
    }
}

/// On-disk dialogue policy.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolicyFile {
    pub id: String,
    pub kernel: BTreeMap<String, BTreeMap<String, f64>>,
}

impl PolicyFile {
    pub fn policy(&self) -> Result<DialoguePolicy> {
        DialoguePolicy::new(self.id.clone(), self.kernel.clone())
    }

    pub fn from_policy(policy: &DialoguePolicy) -> Self {
        Self {
            id: policy.id().to_string(),
            kernel: policy.kernel().clone(),
        }
    }
}

/// Loads a hypothesis space stored as a JSON array of policy objects.
pub fn load_hypothesis_space(path: impl AsRef<Path>) -> Result<HypothesisSpace> {
    let text = fs::read_to_string(path)?;
    let files: Vec<PolicyFile> = serde_json::from_str(&text)?;
    let policies = files
        .iter()
        .map(PolicyFile::policy)
        .collect::<Result<Vec<_>>>()?;
    HypothesisSpace::new(policies)
}

pub fn save_hypothesis_space(space: &HypothesisSpace, path: impl AsRef<Path>) -> Result<()> {
    let files: Vec<PolicyFile> = space
        .policies()
        .iter()
        .map(PolicyFile::from_policy)
        .collect();
    let mut text = serde_json::to_string_pretty(&files)?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distribution_file_round_trips_through_joint() {
        let text = r#"{"contexts":[{"id":"c0","prob":0.5},{"id":"c1","prob":0.5}],
            "conditionals":{"c0":{"d1":1.0},"c1":{"d0":1.0}},
            "attributes":{"F":{"c0":1.0,"c1":0.0}}}"#;
        let file: DistributionFile = serde_json::from_str(text).unwrap();
        let joint = file.joint().unwrap();
        let kernel = file.kernel("F").unwrap();
        assert_eq!(joint.context_prob("c0"), 0.5);
        assert_eq!(kernel.prob_given("c0").unwrap(), 1.0);

        let rebuilt = DistributionFile::from_parts(&joint, &[kernel]);
        assert_eq!(
            serde_json::to_string(&rebuilt).unwrap(),
            serde_json::to_string(&file).unwrap()
        );
    }

    #[test]
    fn unknown_attribute_errors() {
        let file = DistributionFile {
            contexts: vec![],
            conditionals: BTreeMap::new(),
            attributes: BTreeMap::new(),
        };
        assert!(file.kernel("F").is_err());
    }
}
