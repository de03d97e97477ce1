//! Classification-parity comparisons: the classifier-side notions that score
//! parity specializes to.

use serde::{Deserialize, Serialize};

use crate::error::{EquityError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierRow {
    pub features_id: String,
    pub label: u8,
    pub attribute: u8,
    pub prediction: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<f64>,
}

/// Labeled, attributed predictions from some classifier.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassifierDataset {
    rows: Vec<ClassifierRow>,
}

impl ClassifierDataset {
    pub fn new(rows: Vec<ClassifierRow>) -> Result<Self> {
        for row in &rows {
            for value in [row.label, row.attribute, row.prediction] {
                if value > 1 {
                    return Err(EquityError::InvalidAttributeValue { value });
                }
            }
            if let Some(w) = row.weight {
                if !w.is_finite() || w < 0.0 {
                    return Err(EquityError::InvalidParameter {
                        name: "weight",
                        value: w,
                    });
                }
            }
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[ClassifierRow] {
        &self.rows
    }

    /// Weighted mean of `f(row)` over rows with the given attribute value.
    fn group_mean<F>(&self, attribute_value: u8, f: F) -> Result<f64>
    where
        F: Fn(&ClassifierRow) -> f64,
    {
        let mut total_weight = 0.0;
        let mut total = 0.0;
        for row in self.rows.iter().filter(|r| r.attribute == attribute_value) {
            let w = row.weight.unwrap_or(1.0);
            total_weight += w;
            total += w * f(row);
        }
        if total_weight <= 0.0 {
            return Err(EquityError::EmptyGroup { attribute_value });
        }
        Ok(total / total_weight)
    }
}

/// |E[c(X) | A=0] - E[c(X) | A=1]| by direct frequency.
pub fn demographic_parity_gap(data: &ClassifierDataset) -> Result<f64> {
    let mean0 = data.group_mean(0, |r| f64::from(r.prediction))?;
    let mean1 = data.group_mean(1, |r| f64::from(r.prediction))?;
    Ok((mean0 - mean1).abs())
}

/// |Pr(c(X) != Y | A=0) - Pr(c(X) != Y | A=1)| by direct frequency.
pub fn accuracy_parity_gap(data: &ClassifierDataset) -> Result<f64> {
    let err = |r: &ClassifierRow| f64::from(r.prediction != r.label);
    let rate0 = data.group_mean(0, err)?;
    let rate1 = data.group_mean(1, err)?;
    Ok((rate0 - rate1).abs())
}
