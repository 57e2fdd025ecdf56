//! Decomposition-based GA: weighted Tchebycheff scalarisation over a uniform
//! weight lattice with neighbourhood mating and an external non-dominated
//! archive.

use momkp::{MomkpInstance, Selection};
use pareto_lens::{ObjectiveVector, Solution};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::archive::Archive;
use crate::check_mask;
use crate::nsga2::mask_label;
use crate::ops::{birth, random_bits, vary, Individual};
use crate::params::SolverParams;
use crate::{Error, Result};

/// Neighbourhood size for mating and replacement.
const NEIGHBOURHOOD: usize = 20;

/// Uniform simplex lattice of weight vectors for `dim` objectives: the
/// largest lattice {a/H : a in N^dim, sum a = H} whose size does not exceed
/// `max_size`. Zero weights are lifted to a small epsilon so every objective
/// keeps pressure.
pub fn weight_lattice(dim: usize, max_size: usize) -> Vec<Vec<f64>> {
    assert!(dim >= 1 && max_size >= 1);
    let mut h = 0usize;
    while lattice_size(dim, h + 1) <= max_size {
        h += 1;
    }
    if h == 0 {
        return vec![vec![1.0 / dim as f64; dim]];
    }
    let mut lattice = Vec::with_capacity(lattice_size(dim, h));
    let mut prefix = vec![0usize; dim];
    fill(&mut lattice, &mut prefix, 0, h, h);
    for weights in &mut lattice {
        for w in weights.iter_mut() {
            if *w == 0.0 {
                *w = 1e-6;
            }
        }
    }
    lattice
}

fn lattice_size(dim: usize, h: usize) -> usize {
    // C(h + dim - 1, dim - 1)
    let mut size = 1usize;
    for i in 0..dim - 1 {
        size = size.saturating_mul(h + dim - 1 - i) / (i + 1);
    }
    size
}

fn fill(out: &mut Vec<Vec<f64>>, prefix: &mut [usize], pos: usize, left: usize, h: usize) {
    if pos == prefix.len() - 1 {
        prefix[pos] = left;
        out.push(prefix.iter().map(|&a| a as f64 / h as f64).collect());
        return;
    }
    for a in 0..=left {
        prefix[pos] = a;
        fill(out, prefix, pos + 1, left - a, h);
    }
}

/// Tchebycheff scalarisation for maximisation: distance from the ideal point
/// under one weight vector; smaller is better.
#[inline]
fn tchebycheff(objectives: &[f64], weights: &[f64], ideal: &[f64]) -> f64 {
    let mut g = f64::NEG_INFINITY;
    for ((&f, &w), &z) in objectives.iter().zip(weights).zip(ideal) {
        let d = w * (z - f);
        if d > g {
            g = d;
        }
    }
    g
}

/// Indices of the `t` nearest weight vectors per subproblem (including the
/// subproblem itself), by Euclidean distance with stable index tie-breaks.
fn neighbourhoods(lattice: &[Vec<f64>], t: usize) -> Vec<Vec<usize>> {
    let n = lattice.len();
    (0..n)
        .map(|i| {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| {
                let da = sq_dist(&lattice[i], &lattice[a]);
                let db = sq_dist(&lattice[i], &lattice[b]);
                da.total_cmp(&db).then(a.cmp(&b))
            });
            order.truncate(t.min(n));
            order
        })
        .collect()
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub(crate) fn moead_core(
    inst: &MomkpInstance,
    mask: &[usize],
    archive_objectives: &[usize],
    params: &SolverParams,
    seed_pool: &[Selection],
    origin: &str,
) -> Result<Archive> {
    params.validate()?;
    check_mask(mask, inst.num_profits(), 2)?;

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = inst.num_items();
    let dim = mask.len();
    let mut evals = 0usize;

    let lattice = weight_lattice(dim, params.population);
    let neighbours = neighbourhoods(&lattice, NEIGHBOURHOOD);
    let subproblems = lattice.len();

    let masked = |objectives: &[f64]| -> Vec<f64> { mask.iter().map(|&k| objectives[k]).collect() };

    let mut archive = Archive::new();
    let archive_insert = |ind: &Individual, archive: &mut Archive| -> Result<()> {
        let scored: Vec<f64> = archive_objectives.iter().map(|&k| ind.objectives[k]).collect();
        archive.insert(Solution::with_decision(
            ObjectiveVector::new(scored).map_err(|e| Error::InvalidArgument(e.to_string()))?,
            ind.bits.iter().map(|&b| b as u8).collect(),
            origin.to_string(),
        ));
        Ok(())
    };

    // population: one incumbent per subproblem
    let mut population: Vec<Individual> = Vec::with_capacity(subproblems);
    for s in 0..subproblems {
        let ind = if !seed_pool.is_empty() && s % 2 == 0 {
            // seeded start: every other subproblem drawn from the pool
            let pick = &seed_pool[rng.gen_range(0..seed_pool.len())];
            let objectives = inst.evaluate(pick)?.values().to_vec();
            Individual { bits: pick.0.clone(), objectives }
        } else {
            birth(inst, random_bits(n, &mut rng), &mut rng, &mut evals)?
        };
        population.push(ind);
    }

    // ideal point over the masked objectives
    let mut ideal = vec![f64::NEG_INFINITY; dim];
    for ind in &population {
        for (d, v) in masked(&ind.objectives).into_iter().enumerate() {
            ideal[d] = ideal[d].max(v);
        }
    }
    for ind in &population {
        archive_insert(ind, &mut archive)?;
    }

    'outer: loop {
        for s in 0..subproblems {
            if evals >= params.evaluations {
                break 'outer;
            }
            let a = neighbours[s][rng.gen_range(0..neighbours[s].len())];
            let b = neighbours[s][rng.gen_range(0..neighbours[s].len())];
            let (c1, c2) = vary(
                &population[a].bits,
                &population[b].bits,
                params.crossover_rate,
                params.mutation_rate,
                &mut rng,
            )?;
            let candidate = if rng.gen_bool(0.5) { c1 } else { c2 };
            let child = birth(inst, candidate, &mut rng, &mut evals)?;

            let child_masked = masked(&child.objectives);
            for (d, &v) in child_masked.iter().enumerate() {
                ideal[d] = ideal[d].max(v);
            }
            for &j in &neighbours[s] {
                let incumbent = masked(&population[j].objectives);
                if tchebycheff(&child_masked, &lattice[j], &ideal)
                    < tchebycheff(&incumbent, &lattice[j], &ideal)
                {
                    population[j] = child.clone();
                }
            }
            archive_insert(&child, &mut archive)?;
        }
    }

    Ok(archive)
}

/// Decomposition GA on a subset of at least two objectives; the returned
/// archive is scored and filtered on all of the instance's objectives.
pub fn decomposition_run(
    inst: &MomkpInstance,
    mask: &[usize],
    params: &SolverParams,
) -> Result<Archive> {
    let all: Vec<usize> = (0..inst.num_profits()).collect();
    let label = mask_label("moead", mask);
    moead_core(inst, mask, &all, params, &[], &label)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::archive::dominates_max;
    use momkp::{generate, CapacityRule, SetKind};

    #[test]
    fn lattice_sizes() {
        assert_eq!(weight_lattice(2, 200).len(), 200);
        let l3 = weight_lattice(3, 200);
        assert!(l3.len() <= 200 && l3.len() >= 150, "got {}", l3.len());
        let l4 = weight_lattice(4, 200);
        assert!(l4.len() <= 200 && l4.len() >= 100, "got {}", l4.len());
        // degenerate: a single uniform weight vector
        let l = weight_lattice(4, 1);
        assert_eq!(l, vec![vec![0.25; 4]]);
    }

    #[test]
    fn lattice_rows_sum_to_one() {
        for dim in 2..=4 {
            for weights in weight_lattice(dim, 60) {
                let sum: f64 = weights.iter().sum();
                assert!((sum - 1.0).abs() < 1e-3, "{weights:?}");
                assert!(weights.iter().all(|&w| w > 0.0));
            }
        }
    }

    #[test]
    fn tchebycheff_prefers_closer_points() {
        let ideal = [10.0, 10.0];
        let w = [0.5, 0.5];
        assert!(tchebycheff(&[9.0, 9.0], &w, &ideal) < tchebycheff(&[5.0, 9.0], &w, &ideal));
        assert_eq!(tchebycheff(&[10.0, 10.0], &w, &ideal), 0.0);
    }

    #[test]
    fn archive_is_mutually_nondominated() {
        let inst = generate(SetKind::C, 40, 4, 4, CapacityRule::PerItem(50), 8).unwrap();
        let params = SolverParams {
            evaluations: 3_000,
            population: 50,
            ..SolverParams::for_instance(&inst, 21)
        };
        let archive = decomposition_run(&inst, &[0, 1], &params).unwrap();
        assert!(!archive.is_empty());
        for a in archive.entries() {
            for b in archive.entries() {
                assert!(!dominates_max(a.objectives.values(), b.objectives.values()));
            }
        }
    }

    #[test]
    fn degenerate_lattice_still_produces_solutions() {
        let inst = generate(SetKind::A, 20, 4, 4, CapacityRule::PerItem(50), 3).unwrap();
        let params = SolverParams {
            evaluations: 500,
            population: 2,
            ..SolverParams::for_instance(&inst, 5)
        };
        let archive = decomposition_run(&inst, &[0, 1, 2, 3], &params).unwrap();
        assert!(!archive.is_empty());
    }

    #[test]
    fn deterministic_given_seed() {
        let inst = generate(SetKind::X, 30, 4, 4, CapacityRule::PerItem(50), 2).unwrap();
        let params = SolverParams {
            evaluations: 2_000,
            population: 30,
            ..SolverParams::for_instance(&inst, 13)
        };
        let a = decomposition_run(&inst, &[1, 3], &params).unwrap();
        let b = decomposition_run(&inst, &[1, 3], &params).unwrap();
        assert_eq!(a.entries(), b.entries());
    }
}
