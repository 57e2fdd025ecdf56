//! Cross-stage contracts of the solver pipeline, exercised at small scale.

use momkp::{generate, CapacityRule, MomkpInstance, Selection, SetKind};
use momkp_solver::{
    decomposition_run, fast_nondominated_sort, nsga2_run, pipeline_stages, seeded_pipeline, soga,
    SolverParams,
};
use pareto_lens::correlation::{kendall_tau, TauPolicy};
use pareto_lens::regionmap::{build_distribution_map, ThresholdVector};
use pareto_lens::{maximise_specs, ApproximationSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn small_params(inst: &MomkpInstance, evaluations: usize, seed: u64) -> SolverParams {
    SolverParams {
        population: 40,
        evaluations,
        ..SolverParams::for_instance(inst, seed)
    }
}

/// Independent quadratic oracle for the non-dominated subset (maximise).
fn oracle_front(values: &[Vec<f64>]) -> Vec<usize> {
    let beats = |a: &[f64], b: &[f64]| {
        a.iter().zip(b).all(|(x, y)| x >= y) && a.iter().zip(b).any(|(x, y)| x > y)
    };
    (0..values.len())
        .filter(|&i| !values.iter().enumerate().any(|(j, b)| j != i && beats(b, &values[i])))
        .collect()
}

#[test]
fn rank_zero_matches_oracle_on_random_populations() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let n = rng.gen_range(2..120);
        let m = rng.gen_range(2..5);
        let values: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..m).map(|_| rng.gen_range(0..12) as f64).collect())
            .collect();
        let fronts = fast_nondominated_sort(&values);
        assert_eq!(fronts[0], oracle_front(&values));
        let total: usize = fronts.iter().map(|f| f.len()).sum();
        assert_eq!(total, n, "sort must partition the population");
    }
}

#[test]
fn conflicting_pair_yields_tradeoff_front() {
    let inst = generate(SetKind::C, 60, 4, 4, CapacityRule::PerItem(50), 31).unwrap();
    let params = small_params(&inst, 8_000, 17);
    let archive = nsga2_run(&inst, &[0, 1], &params).unwrap();
    assert!(archive.len() >= 3, "need a few points to correlate");
    let rows: Vec<Vec<f64>> = archive
        .entries()
        .iter()
        .map(|s| vec![s.objectives[0], s.objectives[1]])
        .collect();
    let set = ApproximationSet::from_rows(maximise_specs(2), "front", &rows).unwrap();
    let tau = kendall_tau(&set, 0, 1, TauPolicy::TauA).unwrap();
    assert!(tau < -0.5, "conflicting recipe must trade off on the front, tau = {tau}");
}

/// If either algorithm reaches the all-good region at some threshold, the
/// dominance-filtered union of both archives still reaches it: a dominator of
/// an all-good solution is itself all-good.
#[test]
fn union_preserves_all_good_occupancy() {
    let inst = generate(SetKind::A, 50, 4, 4, CapacityRule::PerItem(50), 7).unwrap();
    let params = small_params(&inst, 6_000, 23);
    let a = nsga2_run(&inst, &[0, 1, 2, 3], &params).unwrap();
    let b = decomposition_run(&inst, &[0, 1, 2, 3], &params).unwrap();

    let to_set = |solutions: Vec<pareto_lens::Solution>| {
        ApproximationSet::with_solutions(maximise_specs(4), "u", solutions).unwrap()
    };
    let set_a = to_set(a.entries().to_vec());
    let set_b = to_set(b.entries().to_vec());
    let union = pareto_lens::nondominated_filter(&to_set(
        a.entries().iter().chain(b.entries()).cloned().collect(),
    ));

    for level in [0.1, 0.3, 0.5] {
        let r0 = |set: &ApproximationSet| {
            let t = pareto_lens::regionmap::thresholds_at_level(&union, level).unwrap();
            build_distribution_map(set, &t).map(|m| m.counts[0]).unwrap_or(0)
        };
        let (ca, cb, cu) = (r0(&set_a), r0(&set_b), r0(&union));
        if ca > 0 || cb > 0 {
            assert!(cu > 0, "union lost the all-good region at level {level}");
        }
    }
}

#[test]
fn pipeline_final_set_contracts() {
    let inst = generate(SetKind::A, 40, 4, 4, CapacityRule::PerItem(50), 3).unwrap();
    let params = SolverParams {
        population: 30,
        evaluations: 2_000,
        ..SolverParams::for_instance(&inst, 5)
    };
    let set = seeded_pipeline(&inst, &params).unwrap();
    assert!(!set.is_empty());
    assert_eq!(set.num_objectives(), 4);
    assert_eq!(set.instance_id(), inst.instance_id());

    // archive soundness: stored objectives equal re-evaluation of decisions,
    // and every decision is feasible
    for sol in set.solutions() {
        let bits = sol.decision.as_ref().expect("pipeline keeps decision vectors");
        let x = Selection::from_bits(bits);
        assert!(inst.feasible(&x).unwrap());
        let re = inst.evaluate(&x).unwrap();
        assert_eq!(re.values(), sol.objectives.values());
    }

    // the final set is mutually non-dominated
    let filtered = pareto_lens::nondominated_filter(&set);
    assert_eq!(filtered.len(), set.len());

    // elitism: per-objective best is at least the soga stage's best
    for k in 0..4 {
        let stage_seed = momkp_solver::mix_seed(params.seed, k as u64);
        let stage_params = SolverParams { seed: stage_seed, ..params.clone() };
        let soga_best = soga(&inst, k, &stage_params).unwrap()[0].objectives[k];
        let set_best = set
            .objective_values(k)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(
            set_best >= soga_best,
            "objective {k}: final {set_best} below soga {soga_best}"
        );
    }
}

#[test]
fn pipeline_is_deterministic() {
    let inst = generate(SetKind::X, 30, 4, 4, CapacityRule::PerItem(50), 6).unwrap();
    let params = SolverParams {
        population: 20,
        evaluations: 1_000,
        ..SolverParams::for_instance(&inst, 41)
    };
    let a = seeded_pipeline(&inst, &params).unwrap();
    let b = seeded_pipeline(&inst, &params).unwrap();
    assert_eq!(a, b);
}

#[test]
fn masked_pipeline_restricts_objectives() {
    let inst = generate(SetKind::A, 30, 4, 4, CapacityRule::PerItem(50), 8).unwrap();
    let params = SolverParams {
        population: 20,
        evaluations: 1_000,
        objective_mask: Some(vec![1, 3]),
        ..SolverParams::for_instance(&inst, 4)
    };
    let set = seeded_pipeline(&inst, &params).unwrap();
    assert_eq!(set.num_objectives(), 2);
    let names: Vec<&str> = set.specs().iter().map(|s| s.name.as_str()).collect();
    assert_eq!(names, vec!["Z2", "Z4"]);
    // two active objectives: 2 soga + 1 pair x 2 algorithms + 6 seeded
    assert_eq!(pipeline_stages(&[1, 3]).len(), 10);
}

#[test]
fn stage_labels_are_stable() {
    let stages = pipeline_stages(&[0, 1, 2, 3]);
    assert_eq!(stages[0].label, "soga(Z1)");
    assert_eq!(stages[4].label, "nsga2(Z1,Z2)");
    assert_eq!(stages[5].label, "moead(Z1,Z2)");
    assert_eq!(stages[24].label, "nsga2(Z1,Z2,Z3,Z4)#0");
    assert_eq!(stages[29].label, "moead(Z1,Z2,Z3,Z4)#2");
}

/// The region-map threshold machinery relies on every archived vector being
/// finite; spot-check a pipeline output through a full analysis pass.
#[test]
fn pipeline_output_feeds_the_analysis() {
    let inst = generate(SetKind::C, 30, 4, 4, CapacityRule::PerItem(50), 12).unwrap();
    let params = SolverParams {
        population: 20,
        evaluations: 1_500,
        ..SolverParams::for_instance(&inst, 33)
    };
    let set = seeded_pipeline(&inst, &params).unwrap();
    let thresholds = ThresholdVector::uniform(0.0, 4).unwrap();
    let map = build_distribution_map(&set, &thresholds).unwrap();
    assert_eq!(map.counts.iter().sum::<u64>(), set.len() as u64);
}
