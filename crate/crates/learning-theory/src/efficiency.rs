//! Data-efficiency analysis of balance-by-downsampling, and the published
//! gap/divergence consistency check.

use serde::{Deserialize, Serialize};

use crate::bound::efficiency_term;
use crate::error::{Result, TheoryError};

/// Compares the data-efficiency term before and after downsampling a fraction
/// `alpha` of the data, alongside the two inflation factors the analysis
/// trades off: 1/(2 beta) applied to the whole bound when training on skewed
/// data directly, versus 1/sqrt(2 beta) applied to the efficiency term in the
/// ideal single-attribute downsampling case (alpha = 2 beta).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AugmentationEfficiencyReport {
    pub alpha: f64,
    pub beta: f64,
    pub hyp_size: usize,
    pub delta: f64,
    pub m: usize,
    pub effective_m: usize,
    pub efficiency_plain: f64,
    pub efficiency_downsampled: f64,
    pub leather_inflation_factor: f64,
    pub downsample_inflation_factor: f64,
}

pub fn augmentation_efficiency(
    alpha: f64,
    hyp_size: usize,
    m: usize,
    delta: f64,
    beta: f64,
) -> Result<AugmentationEfficiencyReport> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(TheoryError::Domain {
            name: "alpha",
            value: alpha,
        });
    }
    if !(beta > 0.0 && beta <= 0.5) {
        return Err(TheoryError::Domain {
            name: "beta",
            value: beta,
        });
    }
    let effective_m = (alpha * m as f64).floor() as usize;
    if effective_m < 1 {
        return Err(TheoryError::Domain {
            name: "alpha * m",
            value: alpha * m as f64,
        });
    }
    Ok(AugmentationEfficiencyReport {
        alpha,
        beta,
        hyp_size,
        delta,
        m,
        effective_m,
        efficiency_plain: efficiency_term(hyp_size, m, delta)?,
        efficiency_downsampled: efficiency_term(hyp_size, effective_m, delta)?,
        leather_inflation_factor: 1.0 / (2.0 * beta),
        downsample_inflation_factor: 1.0 / (2.0 * beta).sqrt(),
    })
}

/// True iff the parity gap is at most twice the test divergence, both on the
/// 0 to 100 scale used in published comparisons. Exact comparison, no
/// tolerance.
pub fn table1_consistency(delta_gap: f64, td: f64) -> Result<bool> {
    for (name, value) in [("delta_gap", delta_gap), ("td", td)] {
        if !value.is_finite() || !(0.0..=100.0).contains(&value) {
            return Err(TheoryError::Domain { name, value });
        }
    }
    Ok(delta_gap <= 2.0 * td)
}
