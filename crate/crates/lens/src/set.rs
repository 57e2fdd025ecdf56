//! Approximation sets, Pareto dominance, non-dominated filtering and
//! min-max normalisation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objective::{ObjectiveSpec, ObjectiveVector, Sense, Solution};

/// A collection of solutions' objective vectors tagged with the identity of
/// the instance they approximate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproximationSet {
    specs: Vec<ObjectiveSpec>,
    solutions: Vec<Solution>,
    instance_id: String,
}

impl ApproximationSet {
    /// Creates an empty set. Requires at least two objectives with unique,
    /// non-empty names.
    pub fn new(specs: Vec<ObjectiveSpec>, instance_id: impl Into<String>) -> Result<Self> {
        if specs.len() < 2 {
            return Err(Error::argument(format!(
                "need at least 2 objectives, got {}",
                specs.len()
            )));
        }
        for (k, spec) in specs.iter().enumerate() {
            if spec.name.is_empty() {
                return Err(Error::argument(format!("objective {k} has an empty name")));
            }
            if specs[..k].iter().any(|other| other.name == spec.name) {
                return Err(Error::argument(format!(
                    "duplicate objective name '{}'",
                    spec.name
                )));
            }
        }
        Ok(ApproximationSet { specs, solutions: Vec::new(), instance_id: instance_id.into() })
    }

    pub fn with_solutions(
        specs: Vec<ObjectiveSpec>,
        instance_id: impl Into<String>,
        solutions: Vec<Solution>,
    ) -> Result<Self> {
        let mut set = ApproximationSet::new(specs, instance_id)?;
        for sol in solutions {
            set.push(sol)?;
        }
        Ok(set)
    }

    /// Builds an all-maximise set from plain value rows (mostly for tests and
    /// ingestion of bare data).
    pub fn from_rows(
        specs: Vec<ObjectiveSpec>,
        instance_id: impl Into<String>,
        rows: &[Vec<f64>],
    ) -> Result<Self> {
        let mut set = ApproximationSet::new(specs, instance_id)?;
        for row in rows {
            set.push(Solution::new(ObjectiveVector::new(row.clone())?, "rows"))?;
        }
        Ok(set)
    }

    pub fn push(&mut self, solution: Solution) -> Result<()> {
        if solution.objectives.len() != self.specs.len() {
            return Err(Error::DimensionMismatch {
                expected: self.specs.len(),
                got: solution.objectives.len(),
            });
        }
        self.solutions.push(solution);
        Ok(())
    }

    #[inline]
    pub fn specs(&self) -> &[ObjectiveSpec] {
        &self.specs
    }

    #[inline]
    pub fn solutions(&self) -> &[Solution] {
        &self.solutions
    }

    #[inline]
    pub fn instance_id(&self) -> &str {
        &self.instance_id
    }

    /// Number of objectives `m`.
    #[inline]
    pub fn num_objectives(&self) -> usize {
        self.specs.len()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.solutions.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    /// Iterates over the values of objective `k` across all solutions.
    pub fn objective_values(&self, k: usize) -> impl Iterator<Item = f64> + '_ {
        self.solutions.iter().map(move |s| s.objectives[k])
    }

    /// Observed (min, max) of objective `k`, or `None` on an empty set.
    pub fn min_max(&self, k: usize) -> Option<(f64, f64)> {
        let mut it = self.objective_values(k);
        let first = it.next()?;
        let mut lo = first;
        let mut hi = first;
        for v in it {
            if v < lo {
                lo = v;
            }
            if v > hi {
                hi = v;
            }
        }
        Some((lo, hi))
    }
}

/// Pareto dominance: `a` dominates `b` when it is at least as good in every
/// objective (per sense) and strictly better in at least one. Equal vectors
/// dominate neither way.
pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector, specs: &[ObjectiveSpec]) -> Result<bool> {
    if a.len() != specs.len() {
        return Err(Error::DimensionMismatch { expected: specs.len(), got: a.len() });
    }
    if b.len() != specs.len() {
        return Err(Error::DimensionMismatch { expected: specs.len(), got: b.len() });
    }
    Ok(dominates_unchecked(a.values(), b.values(), specs))
}

/// Dominance on raw slices; lengths are assumed consistent with `specs`.
#[inline]
pub fn dominates_unchecked(a: &[f64], b: &[f64], specs: &[ObjectiveSpec]) -> bool {
    let mut strictly_better = false;
    for (k, spec) in specs.iter().enumerate() {
        if !spec.sense.at_least_as_good(a[k], b[k]) {
            return false;
        }
        if spec.sense.better(a[k], b[k]) {
            strictly_better = true;
        }
    }
    strictly_better
}

/// Returns the maximal subset with no dominated member. Survivor order is
/// stable and exact duplicates of an objective vector are kept once.
pub fn nondominated_filter(set: &ApproximationSet) -> ApproximationSet {
    let specs = set.specs();
    let sols = set.solutions();
    let mut survivors: Vec<Solution> = Vec::new();
    'candidates: for (i, sol) in sols.iter().enumerate() {
        let a = sol.objectives.values();
        for (j, other) in sols.iter().enumerate() {
            if i != j && dominates_unchecked(other.objectives.values(), a, specs) {
                continue 'candidates;
            }
        }
        if survivors.iter().any(|kept| kept.objectives.values() == a) {
            continue;
        }
        survivors.push(sol.clone());
    }
    ApproximationSet {
        specs: set.specs.clone(),
        solutions: survivors,
        instance_id: set.instance_id.clone(),
    }
}

/// Min-max normalises every objective to [0,1] so that 1 is always best:
/// maximise objectives map as (v-min)/(max-min), minimise objectives as
/// (max-v)/(max-min). A degenerate objective (max == min) maps to 0.5. The
/// returned set is all-maximise since direction is baked into the values.
pub fn normalize(set: &ApproximationSet) -> Result<ApproximationSet> {
    if set.is_empty() {
        return Err(Error::insufficient("cannot normalise an empty set"));
    }
    let m = set.num_objectives();
    let ranges: Vec<(f64, f64)> = (0..m).map(|k| set.min_max(k).unwrap()).collect();

    let specs: Vec<ObjectiveSpec> = set
        .specs()
        .iter()
        .map(|s| ObjectiveSpec::maximise(s.name.clone()))
        .collect();

    let solutions = set
        .solutions()
        .iter()
        .map(|sol| {
            let values = sol
                .objectives
                .values()
                .iter()
                .enumerate()
                .map(|(k, &v)| {
                    let (lo, hi) = ranges[k];
                    if hi == lo {
                        0.5
                    } else {
                        match set.specs()[k].sense {
                            Sense::Maximise => (v - lo) / (hi - lo),
                            Sense::Minimise => (hi - v) / (hi - lo),
                        }
                    }
                })
                .collect();
            Solution {
                objectives: ObjectiveVector::new(values).expect("normalised values are finite"),
                decision: sol.decision.clone(),
                origin: sol.origin.clone(),
            }
        })
        .collect();

    Ok(ApproximationSet { specs, solutions, instance_id: set.instance_id.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objective::maximise_specs;

    fn max_set(rows: &[Vec<f64>]) -> ApproximationSet {
        ApproximationSet::from_rows(maximise_specs(rows[0].len()), "test", rows).unwrap()
    }

    #[test]
    fn dominance_basics() {
        let specs = maximise_specs(2);
        let a = ObjectiveVector::new(vec![2.0, 3.0]).unwrap();
        let b = ObjectiveVector::new(vec![1.0, 3.0]).unwrap();
        assert!(dominates(&a, &b, &specs).unwrap());
        assert!(!dominates(&b, &a, &specs).unwrap());

        let c = ObjectiveVector::new(vec![1.0, 2.0]).unwrap();
        let d = ObjectiveVector::new(vec![2.0, 1.0]).unwrap();
        assert!(!dominates(&c, &d, &specs).unwrap());
        assert!(!dominates(&d, &c, &specs).unwrap());
    }

    #[test]
    fn equal_vectors_do_not_dominate() {
        let specs = maximise_specs(3);
        let a = ObjectiveVector::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(!dominates(&a, &a.clone(), &specs).unwrap());
    }

    #[test]
    fn dominance_respects_sense() {
        let specs = vec![ObjectiveSpec::maximise("Z1"), ObjectiveSpec::minimise("Z2")];
        let a = ObjectiveVector::new(vec![2.0, 1.0]).unwrap();
        let b = ObjectiveVector::new(vec![1.0, 2.0]).unwrap();
        assert!(dominates(&a, &b, &specs).unwrap());
    }

    #[test]
    fn dominance_dimension_error() {
        let specs = maximise_specs(2);
        let a = ObjectiveVector::new(vec![1.0, 2.0, 3.0]).unwrap();
        let b = ObjectiveVector::new(vec![1.0, 2.0]).unwrap();
        assert!(matches!(
            dominates(&a, &b, &specs),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn filter_removes_dominated_and_keeps_order() {
        let set = max_set(&[vec![1.0, 1.0], vec![2.0, 2.0], vec![0.0, 3.0]]);
        let filtered = nondominated_filter(&set);
        let rows: Vec<&[f64]> =
            filtered.solutions().iter().map(|s| s.objectives.values()).collect();
        assert_eq!(rows, vec![&[2.0, 2.0][..], &[0.0, 3.0][..]]);
    }

    #[test]
    fn filter_keeps_one_duplicate() {
        let set = max_set(&[vec![1.0, 2.0], vec![2.0, 1.0], vec![1.0, 2.0]]);
        let filtered = nondominated_filter(&set);
        assert_eq!(filtered.len(), 2);
    }

    #[test]
    fn filter_empty_set_is_empty() {
        let set = ApproximationSet::new(maximise_specs(2), "empty").unwrap();
        assert!(nondominated_filter(&set).is_empty());
    }

    #[test]
    fn filter_is_idempotent() {
        let set = max_set(&[
            vec![3.0, 1.0],
            vec![1.0, 3.0],
            vec![2.0, 2.0],
            vec![0.0, 0.0],
            vec![2.0, 2.0],
        ]);
        let once = nondominated_filter(&set);
        let twice = nondominated_filter(&once);
        assert_eq!(once, twice);
    }

    #[test]
    fn normalize_affine_and_degenerate() {
        let set = max_set(&[vec![10.0, 7.0], vec![20.0, 7.0], vec![30.0, 7.0]]);
        let normed = normalize(&set).unwrap();
        let z1: Vec<f64> = normed.objective_values(0).collect();
        let z2: Vec<f64> = normed.objective_values(1).collect();
        assert_eq!(z1, vec![0.0, 0.5, 1.0]);
        assert_eq!(z2, vec![0.5, 0.5, 0.5]);
    }

    #[test]
    fn normalize_minimise_flips_direction() {
        let specs = vec![ObjectiveSpec::maximise("Z1"), ObjectiveSpec::minimise("Z2")];
        let set = ApproximationSet::from_rows(
            specs,
            "t",
            &[vec![0.0, 5.0], vec![1.0, 10.0]],
        )
        .unwrap();
        let normed = normalize(&set).unwrap();
        // best (lowest) Z2 value maps to 1
        let z2: Vec<f64> = normed.objective_values(1).collect();
        assert_eq!(z2, vec![1.0, 0.0]);
        assert!(normed.specs().iter().all(|s| s.sense == Sense::Maximise));
    }

    #[test]
    fn normalize_empty_is_an_error() {
        let set = ApproximationSet::new(maximise_specs(2), "empty").unwrap();
        assert!(matches!(normalize(&set), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn duplicate_names_rejected() {
        let specs = vec![ObjectiveSpec::maximise("Z1"), ObjectiveSpec::maximise("Z1")];
        assert!(ApproximationSet::new(specs, "t").is_err());
    }
}
