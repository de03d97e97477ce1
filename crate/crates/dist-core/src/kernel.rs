use std::collections::BTreeMap;

use crate::error::{DistError, Result};
use crate::joint::RENORM_TOLERANCE;

/// Per-attribute conditional `Pr(A = 1 | C = c)` over contexts.
///
/// The kernel's domain must cover every positive-probability context of any
/// joint it is paired with; coverage is checked at call sites.
#[derive(Debug, Clone, PartialEq)]
pub struct AttributeKernel {
    attribute: String,
    probs: BTreeMap<String, f64>,
}

impl AttributeKernel {
    pub fn new(attribute: impl Into<String>, probs: BTreeMap<String, f64>) -> Result<Self> {
        let attribute = attribute.into();
        for (context, p) in &probs {
            if !p.is_finite() || *p < 0.0 || *p > 1.0 + RENORM_TOLERANCE {
                return Err(DistError::InvalidProbability {
                    what: format!("Pr({attribute}=1 | {context})"),
                    value: *p,
                });
            }
        }
        let probs = probs
            .into_iter()
            .map(|(c, p)| (c, p.min(1.0)))
            .collect();
        Ok(Self { attribute, probs })
    }

    pub fn attribute(&self) -> &str {
        &self.attribute
    }

    /// `Pr(A = 1 | C = context)`, erring on uncovered contexts.
    pub fn prob_given(&self, context: &str) -> Result<f64> {
        self.probs
            .get(context)
            .copied()
            .ok_or_else(|| DistError::KernelCoverage {
                attribute: self.attribute.clone(),
                context: context.to_string(),
            })
    }

    /// `Pr(A = a | C = context)` for a in {0, 1}.
    pub fn prob_value_given(&self, context: &str, value: u8) -> Result<f64> {
        let p1 = self.prob_given(context)?;
        Ok(if value == 1 { p1 } else { 1.0 - p1 })
    }

    pub fn contexts(&self) -> impl Iterator<Item = (&str, f64)> {
        self.probs.iter().map(|(c, p)| (c.as_str(), *p))
    }

    pub fn probs(&self) -> &BTreeMap<String, f64> {
        &self.probs
    }
}
