//! Step 1 — global pairwise relationship analysis via Kendall rank
//! correlation and the conflicting / harmonious / independent classification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::set::ApproximationSet;

/// Tie handling for the correlation coefficient.
///
/// `TauA` divides the concordant/discordant surplus by the full pair count
/// ½μ(μ−1); tied pairs contribute nothing to the numerator. `TauB` instead
/// divides by the geometric mean of the non-tied pair counts per objective,
/// which compensates for ties.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TauPolicy {
    #[default]
    TauA,
    TauB,
}

impl TauPolicy {
    pub fn token(self) -> &'static str {
        match self {
            TauPolicy::TauA => "tau-a",
            TauPolicy::TauB => "tau-b",
        }
    }
}

/// Relationship class of an objective pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    Conflicting,
    Harmonious,
    Independent,
}

/// Classifies a correlation value. The ±0.5 boundaries are strict: a value of
/// exactly ±0.5 is independent.
pub fn classify(tau: f64) -> RelationKind {
    if tau < -0.5 {
        RelationKind::Conflicting
    } else if tau > 0.5 {
        RelationKind::Harmonious
    } else {
        RelationKind::Independent
    }
}

/// Correlation and classification for one unordered objective pair (`i < j`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairwiseRelation {
    pub i: usize,
    pub j: usize,
    pub tau: f64,
    pub kind: RelationKind,
}

/// Pair tallies underlying a Kendall coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PairCounts {
    pub concordant: u64,
    pub discordant: u64,
    /// Tied in objective i only.
    pub tied_i: u64,
    /// Tied in objective j only.
    pub tied_j: u64,
    /// Tied in both objectives.
    pub tied_both: u64,
}

impl PairCounts {
    pub fn total(&self) -> u64 {
        self.concordant + self.discordant + self.tied_i + self.tied_j + self.tied_both
    }

    pub fn tau(&self, policy: TauPolicy) -> f64 {
        let surplus = self.concordant as f64 - self.discordant as f64;
        match policy {
            TauPolicy::TauA => {
                let total = self.total();
                if total == 0 {
                    0.0
                } else {
                    surplus / total as f64
                }
            }
            TauPolicy::TauB => {
                let ni = (self.concordant + self.discordant + self.tied_j) as f64;
                let nj = (self.concordant + self.discordant + self.tied_i) as f64;
                let denom = (ni * nj).sqrt();
                if denom == 0.0 {
                    // one objective is completely tied; no ranking information
                    0.0
                } else {
                    surplus / denom
                }
            }
        }
    }
}

/// Counts concordant, discordant and tied solution pairs over objectives
/// `i` and `j` of the set.
pub fn pair_counts(set: &ApproximationSet, i: usize, j: usize) -> Result<PairCounts> {
    let m = set.num_objectives();
    if i >= m || j >= m {
        return Err(Error::argument(format!(
            "objective index out of range: ({i},{j}) with m={m}"
        )));
    }
    if i == j {
        return Err(Error::argument(format!("objective pair requires i != j, got ({i},{j})")));
    }
    if set.len() < 2 {
        return Err(Error::insufficient(format!(
            "Kendall correlation needs at least 2 solutions, got {}",
            set.len()
        )));
    }

    let xs: Vec<f64> = set.objective_values(i).collect();
    let ys: Vec<f64> = set.objective_values(j).collect();
    let mut counts = PairCounts::default();
    for a in 0..xs.len() {
        for b in (a + 1)..xs.len() {
            let dx = xs[a] - xs[b];
            let dy = ys[a] - ys[b];
            if dx == 0.0 && dy == 0.0 {
                counts.tied_both += 1;
            } else if dx == 0.0 {
                counts.tied_i += 1;
            } else if dy == 0.0 {
                counts.tied_j += 1;
            } else if (dx > 0.0) == (dy > 0.0) {
                counts.concordant += 1;
            } else {
                counts.discordant += 1;
            }
        }
    }
    Ok(counts)
}

/// Kendall correlation of objectives `i` and `j` over all unordered solution
/// pairs of the set.
pub fn kendall_tau(set: &ApproximationSet, i: usize, j: usize, policy: TauPolicy) -> Result<f64> {
    Ok(pair_counts(set, i, j)?.tau(policy))
}

/// One classified relation per unordered objective pair, ordered
/// (0,1),(0,2),...,(m−2,m−1).
pub fn pairwise_matrix(set: &ApproximationSet, policy: TauPolicy) -> Result<Vec<PairwiseRelation>> {
    let m = set.num_objectives();
    let mut relations = Vec::with_capacity(m * (m - 1) / 2);
    for i in 0..m {
        for j in (i + 1)..m {
            let tau = kendall_tau(set, i, j, policy)?;
            relations.push(PairwiseRelation { i, j, tau, kind: classify(tau) });
        }
    }
    Ok(relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::maximise_specs;
    use crate::set::ApproximationSet;
    use approx::assert_abs_diff_eq;

    fn set_of(rows: &[Vec<f64>]) -> ApproximationSet {
        ApproximationSet::from_rows(maximise_specs(rows[0].len()), "test", rows).unwrap()
    }

    #[test]
    fn perfectly_concordant() {
        let set = set_of(&[vec![1.0, 1.0], vec![2.0, 2.0], vec![3.0, 3.0]]);
        assert_eq!(kendall_tau(&set, 0, 1, TauPolicy::TauA).unwrap(), 1.0);
        assert_eq!(kendall_tau(&set, 0, 1, TauPolicy::TauB).unwrap(), 1.0);
    }

    #[test]
    fn perfectly_discordant() {
        let set = set_of(&[vec![1.0, 3.0], vec![2.0, 2.0], vec![3.0, 1.0]]);
        assert_eq!(kendall_tau(&set, 0, 1, TauPolicy::TauA).unwrap(), -1.0);
    }

    #[test]
    fn ties_reduce_tau_a_but_not_tau_b() {
        // one tie in x: surplus 2 over 3 pairs
        let set = set_of(&[vec![1.0, 1.0], vec![1.0, 2.0], vec![2.0, 3.0]]);
        let counts = pair_counts(&set, 0, 1).unwrap();
        assert_eq!(counts.concordant, 2);
        assert_eq!(counts.tied_i, 1);
        assert_abs_diff_eq!(counts.tau(TauPolicy::TauA), 2.0 / 3.0);
        assert_abs_diff_eq!(counts.tau(TauPolicy::TauB), 2.0 / (2.0f64 * 3.0).sqrt());
    }

    #[test]
    fn symmetric_in_argument_order() {
        let set = set_of(&[
            vec![1.0, 5.0, 2.0],
            vec![4.0, 2.0, 2.0],
            vec![2.0, 2.0, 8.0],
            vec![9.0, 1.0, 3.0],
        ]);
        for policy in [TauPolicy::TauA, TauPolicy::TauB] {
            let ij = kendall_tau(&set, 0, 2, policy).unwrap();
            let ji = kendall_tau(&set, 2, 0, policy).unwrap();
            assert_eq!(ij, ji);
        }
    }

    #[test]
    fn errors_on_bad_arguments() {
        let set = set_of(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(matches!(kendall_tau(&set, 0, 0, TauPolicy::TauA), Err(Error::InvalidArgument(_))));
        assert!(matches!(kendall_tau(&set, 0, 5, TauPolicy::TauA), Err(Error::InvalidArgument(_))));

        let single = set_of(&[vec![1.0, 2.0]]);
        assert!(matches!(
            kendall_tau(&single, 0, 1, TauPolicy::TauA),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn classification_boundaries_are_strict() {
        assert_eq!(classify(-0.51), RelationKind::Conflicting);
        assert_eq!(classify(-0.5), RelationKind::Independent);
        assert_eq!(classify(0.5), RelationKind::Independent);
        assert_eq!(classify(0.51), RelationKind::Harmonious);
        assert_eq!(classify(0.0), RelationKind::Independent);
    }

    #[test]
    fn matrix_enumerates_pairs_in_order() {
        let set = set_of(&[
            vec![1.0, 2.0, 3.0, 4.0],
            vec![2.0, 3.0, 4.0, 5.0],
            vec![3.0, 1.0, 5.0, 2.0],
        ]);
        let matrix = pairwise_matrix(&set, TauPolicy::TauA).unwrap();
        let pairs: Vec<(usize, usize)> = matrix.iter().map(|r| (r.i, r.j)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
    }
}
