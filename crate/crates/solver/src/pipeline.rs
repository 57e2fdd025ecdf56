//! The multi-stage solution pipeline: per-objective single-objective runs,
//! NSGA-II and decomposition runs on every objective pair and triplet, a
//! combined archive, and archive-seeded full-objective runs. The final
//! approximation set is the non-dominated union of everything found.

use momkp::{MomkpInstance, Selection};
use pareto_lens::{ApproximationSet, ObjectiveSpec, ObjectiveVector, Solution};
use rayon::prelude::*;

use crate::archive::Archive;
use crate::moead::moead_core;
use crate::nsga2::{mask_label, nsga2_core};
use crate::ops::mix_seed;
use crate::params::SolverParams;
use crate::soga::soga;
use crate::{check_mask, Error, Result};

/// Number of archive-seeded runs per algorithm in the final phase.
const SEEDED_RUNS: usize = 3;

/// What one pipeline stage runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StageKind {
    /// Single-objective GA on one objective.
    Soga { objective: usize },
    /// NSGA-II on an objective subset.
    Nsga2 { mask: Vec<usize> },
    /// Decomposition GA on an objective subset.
    Moead { mask: Vec<usize> },
    /// Archive-seeded NSGA-II over all active objectives.
    Nsga2Seeded { run: usize },
    /// Archive-seeded decomposition GA over all active objectives.
    MoeadSeeded { run: usize },
}

/// One stage of the pipeline, with its stable index (the seed stream) and a
/// human-readable label used as solution provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageSpec {
    pub index: usize,
    pub label: String,
    pub kind: StageKind,
}

impl StageSpec {
    /// True for the archive-seeded final phase.
    pub fn is_seeded(&self) -> bool {
        matches!(self.kind, StageKind::Nsga2Seeded { .. } | StageKind::MoeadSeeded { .. })
    }
}

/// Enumerates the stages for a set of active objectives: one soga per
/// objective, NSGA-II and decomposition runs per pair and per triplet, then
/// three seeded runs of each algorithm over all active objectives.
pub fn pipeline_stages(active: &[usize]) -> Vec<StageSpec> {
    let mut stages = Vec::new();
    let mut push = |kind: StageKind, label: String| {
        let index = stages.len();
        stages.push(StageSpec { index, label, kind });
    };

    for &k in active {
        push(StageKind::Soga { objective: k }, format!("soga(Z{})", k + 1));
    }
    for size in [2usize, 3] {
        for mask in subsets(active, size) {
            push(StageKind::Nsga2 { mask: mask.clone() }, mask_label("nsga2", &mask));
            push(StageKind::Moead { mask: mask.clone() }, mask_label("moead", &mask));
        }
    }
    for run in 0..SEEDED_RUNS {
        push(
            StageKind::Nsga2Seeded { run },
            format!("{}#{run}", mask_label("nsga2", active)),
        );
    }
    for run in 0..SEEDED_RUNS {
        push(
            StageKind::MoeadSeeded { run },
            format!("{}#{run}", mask_label("moead", active)),
        );
    }
    stages
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if size > items.len() {
        return out;
    }
    let mut index = (0..size).collect::<Vec<usize>>();
    loop {
        out.push(index.iter().map(|&i| items[i]).collect());
        // advance the combination
        let mut pos = size;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if index[pos] != pos + items.len() - size {
                break;
            }
            if pos == 0 {
                return out;
            }
        }
        index[pos] += 1;
        for later in pos + 1..size {
            index[later] = index[later - 1] + 1;
        }
    }
}

/// Runs one stage with its derived seed. `seed_pool` is only consulted by
/// the archive-seeded stages.
pub fn run_stage(
    inst: &MomkpInstance,
    active: &[usize],
    stage: &StageSpec,
    params: &SolverParams,
    seed_pool: &[Selection],
) -> Result<Vec<Solution>> {
    let stage_params = SolverParams {
        seed: mix_seed(params.seed, stage.index as u64),
        objective_mask: None,
        ..params.clone()
    };
    match &stage.kind {
        StageKind::Soga { objective } => {
            let best = soga(inst, *objective, &stage_params)?;
            // re-score on the active objectives
            best.into_iter()
                .map(|sol| {
                    let scored: Vec<f64> =
                        active.iter().map(|&k| sol.objectives[k]).collect();
                    Ok(Solution {
                        objectives: ObjectiveVector::new(scored)
                            .map_err(|e| Error::InvalidArgument(e.to_string()))?,
                        decision: sol.decision,
                        origin: stage.label.clone(),
                    })
                })
                .collect()
        }
        StageKind::Nsga2 { mask } => {
            let archive = nsga2_core(inst, mask, active, &stage_params, &[], &stage.label)?;
            Ok(archive.entries().to_vec())
        }
        StageKind::Moead { mask } => {
            let archive = moead_core(inst, mask, active, &stage_params, &[], &stage.label)?;
            Ok(archive.entries().to_vec())
        }
        StageKind::Nsga2Seeded { .. } => {
            let archive =
                nsga2_core(inst, active, active, &stage_params, seed_pool, &stage.label)?;
            Ok(archive.entries().to_vec())
        }
        StageKind::MoeadSeeded { .. } => {
            let archive =
                moead_core(inst, active, active, &stage_params, seed_pool, &stage.label)?;
            Ok(archive.entries().to_vec())
        }
    }
}

/// Specs for the active objectives: `Z<k+1>`, maximised.
pub fn active_specs(active: &[usize]) -> Vec<ObjectiveSpec> {
    active.iter().map(|&k| ObjectiveSpec::maximise(format!("Z{}", k + 1))).collect()
}

/// Runs the full pipeline and returns the non-dominated union of every stage
/// output as an approximation set over the active objectives.
///
/// Stages run in parallel; results merge in stage order, so the outcome is
/// deterministic for a fixed master seed regardless of thread scheduling.
pub fn seeded_pipeline(inst: &MomkpInstance, params: &SolverParams) -> Result<ApproximationSet> {
    params.validate()?;
    let active: Vec<usize> = match &params.objective_mask {
        Some(mask) => {
            check_mask(mask, inst.num_profits(), 2)?;
            mask.clone()
        }
        None => (0..inst.num_profits()).collect(),
    };

    let stages = pipeline_stages(&active);
    let (exploration, seeded): (Vec<&StageSpec>, Vec<&StageSpec>) =
        stages.iter().partition(|s| !s.is_seeded());

    let exploration_outputs: Vec<Result<Vec<Solution>>> = exploration
        .par_iter()
        .map(|stage| run_stage(inst, &active, stage, params, &[]))
        .collect();

    let mut archive = Archive::new();
    for output in exploration_outputs {
        archive.merge(output?);
    }
    let seed_pool: Vec<Selection> = archive
        .entries()
        .iter()
        .filter_map(|sol| sol.decision.as_ref().map(|bits| Selection::from_bits(bits)))
        .collect();

    let seeded_outputs: Vec<Result<Vec<Solution>>> = seeded
        .par_iter()
        .map(|stage| run_stage(inst, &active, stage, params, &seed_pool))
        .collect();
    for output in seeded_outputs {
        archive.merge(output?);
    }

    archive.into_set(active_specs(&active), inst.instance_id())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_objectives_make_thirty_stages() {
        let active: Vec<usize> = (0..4).collect();
        let stages = pipeline_stages(&active);
        assert_eq!(stages.len(), 30);
        let sogas = stages.iter().filter(|s| matches!(s.kind, StageKind::Soga { .. })).count();
        let pairs = stages
            .iter()
            .filter(|s| matches!(&s.kind, StageKind::Nsga2 { mask } | StageKind::Moead { mask } if mask.len() == 2))
            .count();
        let triplets = stages
            .iter()
            .filter(|s| matches!(&s.kind, StageKind::Nsga2 { mask } | StageKind::Moead { mask } if mask.len() == 3))
            .count();
        let finals = stages.iter().filter(|s| s.is_seeded()).count();
        assert_eq!((sogas, pairs, triplets, finals), (4, 12, 8, 6));
        // stage indices are the enumeration order
        for (i, stage) in stages.iter().enumerate() {
            assert_eq!(stage.index, i);
        }
    }

    #[test]
    fn two_active_objectives_make_ten_stages() {
        let stages = pipeline_stages(&[0, 2]);
        assert_eq!(stages.len(), 10);
        assert!(stages.iter().any(|s| s.label == "nsga2(Z1,Z3)"));
    }

    #[test]
    fn subset_enumeration_is_lexicographic() {
        assert_eq!(
            subsets(&[0, 1, 2, 3], 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(subsets(&[0, 1, 2, 3], 3).len(), 4);
        assert_eq!(subsets(&[0, 1], 3), Vec::<Vec<usize>>::new());
    }
}
