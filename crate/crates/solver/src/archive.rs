use pareto_lens::{ApproximationSet, ObjectiveSpec, Solution};

use crate::{Error, Result};

/// Mutually non-dominated solutions (all objectives maximised) with decision
/// vectors and provenance. Duplicate objective vectors keep the first entry.
#[derive(Debug, Clone, Default)]
pub struct Archive {
    entries: Vec<Solution>,
}

impl Archive {
    pub fn new() -> Self {
        Archive::default()
    }

    pub fn entries(&self) -> &[Solution] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Inserts a candidate, keeping the archive non-dominated. Returns true
    /// when the candidate survives.
    pub fn insert(&mut self, candidate: Solution) -> bool {
        let c = candidate.objectives.values();
        for kept in &self.entries {
            let k = kept.objectives.values();
            if k == c || dominates_max(k, c) {
                return false;
            }
        }
        self.entries.retain(|kept| !dominates_max(c, kept.objectives.values()));
        self.entries.push(candidate);
        true
    }

    pub fn merge(&mut self, solutions: impl IntoIterator<Item = Solution>) {
        for sol in solutions {
            self.insert(sol);
        }
    }

    /// Converts the archive into an approximation set.
    pub fn into_set(
        self,
        specs: Vec<ObjectiveSpec>,
        instance_id: impl Into<String>,
    ) -> Result<ApproximationSet> {
        ApproximationSet::with_solutions(specs, instance_id, self.entries).map_err(Error::Lens)
    }
}

/// Strict Pareto dominance with every objective maximised.
#[inline]
pub(crate) fn dominates_max(a: &[f64], b: &[f64]) -> bool {
    let mut strictly = false;
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return false;
        }
        if x > y {
            strictly = true;
        }
    }
    strictly
}
