pub mod analyze;
pub mod generate;
pub mod report;
pub mod solve;

use anyhow::{bail, Result};
use pareto_lens::regionmap::{minimal_empty_r0_threshold, thresholds_at_level, ThresholdVector};
use pareto_lens::ApproximationSet;

/// How region-map thresholds are chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum ThresholdPolicy {
    /// Smallest swept level at which the all-good region empties; falls back
    /// to the per-objective mean when no level below 1 empties it.
    MinEmptyR0 { resolution: usize },
    /// Per-objective mean value.
    Mean,
    /// One fixed raw value applied to every objective.
    Fixed(f64),
}

impl ThresholdPolicy {
    pub fn parse(raw: &str, resolution: usize) -> Result<Self> {
        match raw {
            "min-empty-r0" => Ok(ThresholdPolicy::MinEmptyR0 { resolution }),
            "mean" => Ok(ThresholdPolicy::Mean),
            other => {
                if let Some(v) = other.strip_prefix("fixed:") {
                    return Ok(ThresholdPolicy::Fixed(v.parse()?));
                }
                bail!("unknown threshold policy '{other}' (expected min-empty-r0, mean or fixed:<v>)")
            }
        }
    }

    /// Resolves the policy to concrete thresholds plus a description string
    /// for output metadata.
    pub fn resolve(&self, set: &ApproximationSet) -> Result<(ThresholdVector, String)> {
        match self {
            ThresholdPolicy::MinEmptyR0 { resolution } => {
                match minimal_empty_r0_threshold(set, *resolution)? {
                    Some(level) => Ok((
                        thresholds_at_level(set, level)?,
                        format!("min-empty-r0(resolution={resolution}) -> level {level}"),
                    )),
                    None => {
                        // all-good region never empties below level 1
                        let (t, _) = ThresholdPolicy::Mean.resolve(set)?;
                        Ok((t, format!(
                            "min-empty-r0(resolution={resolution}) -> none; fell back to mean"
                        )))
                    }
                }
            }
            ThresholdPolicy::Mean => {
                let m = set.num_objectives();
                let n = set.len() as f64;
                let means: Vec<f64> =
                    (0..m).map(|k| set.objective_values(k).sum::<f64>() / n).collect();
                Ok((ThresholdVector::new(means)?, "mean".to_string()))
            }
            ThresholdPolicy::Fixed(v) => Ok((
                ThresholdVector::uniform(*v, set.num_objectives())?,
                format!("fixed:{v}"),
            )),
        }
    }
}
