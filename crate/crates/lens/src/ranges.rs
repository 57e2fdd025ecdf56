//! Step 2 — per-objective range statistics and the meaningful /
//! non-meaningful classification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::ApproximationSet;

/// Reference scale used to express a range as a fraction.
#[derive(Debug, Clone, PartialEq)]
pub enum Reference {
    /// Per-objective maximum magnitude observed in the set.
    SetMax,
    /// Externally supplied ideal scales, one per objective.
    Supplied(Vec<f64>),
}

/// Observed statistics of one objective over an approximation set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RangeStats {
    pub objective: usize,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    /// max − min.
    pub range: f64,
    /// range divided by the reference scale.
    pub range_fraction: f64,
}

/// Outcome of the meaningfulness rule for one objective.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeaningfulnessVerdict {
    pub objective: usize,
    pub meaningful: bool,
    /// Human-readable record of the rule applied, enough to reproduce the
    /// verdict from the stats alone.
    pub policy: String,
}

/// Computes min/mean/max/range per objective. `range_fraction` divides the
/// range by the chosen reference scale; with `Reference::SetMax` that is the
/// largest magnitude observed for the objective, so scaling the data leaves
/// the fraction unchanged.
pub fn objective_ranges(set: &ApproximationSet, reference: &Reference) -> Result<Vec<RangeStats>> {
    if set.is_empty() {
        return Err(Error::insufficient("range analysis needs a non-empty set"));
    }
    let m = set.num_objectives();
    if let Reference::Supplied(scales) = reference {
        if scales.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: scales.len() });
        }
        if let Some(s) = scales.iter().find(|s| !s.is_finite() || **s <= 0.0) {
            return Err(Error::argument(format!("reference scales must be positive, got {s}")));
        }
    }

    let n = set.len() as f64;
    (0..m)
        .map(|k| {
            let (min, max) = set.min_max(k).unwrap();
            let mean = set.objective_values(k).sum::<f64>() / n;
            let range = max - min;
            let scale = match reference {
                Reference::SetMax => min.abs().max(max.abs()),
                Reference::Supplied(scales) => scales[k],
            };
            let range_fraction = if range == 0.0 {
                0.0
            } else if scale <= 0.0 {
                return Err(Error::argument(format!(
                    "objective {k} has zero reference scale but non-zero range"
                )));
            } else {
                range / scale
            };
            Ok(RangeStats { objective: k, min, max, mean, range, range_fraction })
        })
        .collect()
}

/// An objective is meaningful when its observed range reaches the given
/// fraction of the reference scale (inclusive boundary).
pub fn classify_meaningful(
    stats: &RangeStats,
    threshold_fraction: f64,
) -> Result<MeaningfulnessVerdict> {
    if !(threshold_fraction > 0.0 && threshold_fraction < 1.0) {
        return Err(Error::argument(format!(
            "threshold fraction must lie in (0,1), got {threshold_fraction}"
        )));
    }
    Ok(MeaningfulnessVerdict {
        objective: stats.objective,
        meaningful: stats.range_fraction >= threshold_fraction,
        policy: format!("range_fraction >= {threshold_fraction} of reference scale"),
    })
}

/// Default meaningfulness cutoff: 5% of the reference scale. The underlying
/// rule is a stand-in for domain knowledge and is exposed as a parameter
/// everywhere it is applied.
pub const DEFAULT_MEANINGFUL_FRACTION: f64 = 0.05;
