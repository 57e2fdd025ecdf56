//! NSGA-II: fast non-dominated sorting with crowding-distance survival and
//! binary tournament on (rank, crowding).

use momkp::{MomkpInstance, Selection};
use pareto_lens::{ObjectiveVector, Solution};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::archive::Archive;
use crate::check_mask;
use crate::ops::{birth, random_bits, vary, Individual};
use crate::params::SolverParams;
use crate::{Error, Result};

/// Fast non-dominated sort (maximisation) over rows of objective values.
/// Returns fronts of row indices; fronts[0] is the non-dominated set.
pub fn fast_nondominated_sort(values: &[Vec<f64>]) -> Vec<Vec<usize>> {
    let n = values.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    let mut fronts: Vec<Vec<usize>> = vec![Vec::new()];

    for i in 0..n {
        for j in (i + 1)..n {
            match dominance(&values[i], &values[j]) {
                Dominance::First => {
                    dominated_by[i].push(j);
                    domination_count[j] += 1;
                }
                Dominance::Second => {
                    dominated_by[j].push(i);
                    domination_count[i] += 1;
                }
                Dominance::Neither => {}
            }
        }
        if domination_count[i] == 0 {
            fronts[0].push(i);
        }
    }

    let mut current = 0;
    while !fronts[current].is_empty() {
        let mut next = Vec::new();
        for &i in &fronts[current] {
            for &j in &dominated_by[i] {
                domination_count[j] -= 1;
                if domination_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        fronts.push(next);
        current += 1;
    }
    fronts.pop();
    fronts
}

enum Dominance {
    First,
    Second,
    Neither,
}

/// Single-pass mutual dominance test (maximisation).
#[inline]
fn dominance(a: &[f64], b: &[f64]) -> Dominance {
    let mut a_better = false;
    let mut b_better = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            a_better = true;
        } else if y > x {
            b_better = true;
        }
        if a_better && b_better {
            return Dominance::Neither;
        }
    }
    match (a_better, b_better) {
        (true, false) => Dominance::First,
        (false, true) => Dominance::Second,
        _ => Dominance::Neither,
    }
}

/// Crowding distances for one front, aligned with `front` order. Extreme
/// solutions per objective get infinite distance; interior ones accumulate
/// normalised neighbour gaps.
pub fn crowding_distances(front: &[usize], values: &[Vec<f64>]) -> Vec<f64> {
    let len = front.len();
    let mut dist = vec![0.0f64; len];
    if len == 0 {
        return dist;
    }
    let m = values[front[0]].len();
    let mut order: Vec<usize> = (0..len).collect();
    for k in 0..m {
        order.sort_by(|&a, &b| values[front[a]][k].total_cmp(&values[front[b]][k]));
        let lo = values[front[order[0]]][k];
        let hi = values[front[order[len - 1]]][k];
        dist[order[0]] = f64::INFINITY;
        dist[order[len - 1]] = f64::INFINITY;
        if hi > lo {
            for w in 1..len.saturating_sub(1) {
                let gap = values[front[order[w + 1]]][k] - values[front[order[w - 1]]][k];
                dist[order[w]] += gap / (hi - lo);
            }
        }
    }
    dist
}

struct Ranked {
    individual: Individual,
    rank: usize,
    crowding: f64,
}

fn masked(objectives: &[f64], mask: &[usize]) -> Vec<f64> {
    mask.iter().map(|&k| objectives[k]).collect()
}

/// Survival selection: sorts `pool` into fronts under `mask`, fills the next
/// population front by front and resolves the last partial front by crowding
/// distance.
fn survive(pool: Vec<Individual>, mask: &[usize], target: usize) -> Vec<Ranked> {
    let values: Vec<Vec<f64>> = pool.iter().map(|ind| masked(&ind.objectives, mask)).collect();
    let fronts = fast_nondominated_sort(&values);
    let mut keep: Vec<Option<Individual>> = pool.into_iter().map(Some).collect();
    let mut next = Vec::with_capacity(target);
    for (rank, front) in fronts.iter().enumerate() {
        let crowding = crowding_distances(front, &values);
        if next.len() + front.len() <= target {
            for (slot, &i) in front.iter().enumerate() {
                next.push(Ranked {
                    individual: keep[i].take().expect("front indices are unique"),
                    rank,
                    crowding: crowding[slot],
                });
            }
        } else {
            let mut slots: Vec<usize> = (0..front.len()).collect();
            slots.sort_by(|&a, &b| crowding[b].total_cmp(&crowding[a]));
            for &slot in slots.iter().take(target - next.len()) {
                next.push(Ranked {
                    individual: keep[front[slot]].take().expect("front indices are unique"),
                    rank,
                    crowding: crowding[slot],
                });
            }
            break;
        }
        if next.len() == target {
            break;
        }
    }
    next
}

fn tournament<R: Rng>(population: &[Ranked], rng: &mut R) -> usize {
    let a = rng.gen_range(0..population.len());
    let b = rng.gen_range(0..population.len());
    let (pa, pb) = (&population[a], &population[b]);
    if pa.rank < pb.rank || (pa.rank == pb.rank && pa.crowding >= pb.crowding) {
        a
    } else {
        b
    }
}

/// NSGA-II over the masked objectives. Returns the final non-dominated front
/// re-scored on all objectives (`archive_objectives`) for archiving.
pub(crate) fn nsga2_core(
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
    let mut evals = 0usize;

    let mut initial: Vec<Individual> = Vec::with_capacity(params.population);
    if !seed_pool.is_empty() {
        // archive-seeded start: half drawn from the pool, half random
        for _ in 0..params.population / 2 {
            let pick = &seed_pool[rng.gen_range(0..seed_pool.len())];
            let objectives = inst.evaluate(pick)?.values().to_vec();
            initial.push(Individual { bits: pick.0.clone(), objectives });
        }
    }
    while initial.len() < params.population {
        initial.push(birth(inst, random_bits(n, &mut rng), &mut rng, &mut evals)?);
    }

    let mut population = survive(initial, mask, params.population);

    while evals + 2 <= params.evaluations {
        let mut pool: Vec<Individual> = Vec::with_capacity(2 * params.population);
        while pool.len() < params.population && evals + 2 <= params.evaluations {
            let a = tournament(&population, &mut rng);
            let b = tournament(&population, &mut rng);
            let (c1, c2) = vary(
                &population[a].individual.bits,
                &population[b].individual.bits,
                params.crossover_rate,
                params.mutation_rate,
                &mut rng,
            )?;
            pool.push(birth(inst, c1, &mut rng, &mut evals)?);
            pool.push(birth(inst, c2, &mut rng, &mut evals)?);
        }
        if pool.is_empty() {
            break;
        }
        pool.extend(population.into_iter().map(|r| r.individual));
        population = survive(pool, mask, params.population);
    }

    // final rank-0 front under the mask, archived under the full scoring set
    let mut archive = Archive::new();
    for ranked in population.into_iter().filter(|r| r.rank == 0) {
        let scored = masked(&ranked.individual.objectives, archive_objectives);
        archive.insert(Solution::with_decision(
            ObjectiveVector::new(scored).map_err(|e| Error::InvalidArgument(e.to_string()))?,
            ranked.individual.bits.iter().map(|&b| b as u8).collect(),
            origin.to_string(),
        ));
    }
    Ok(archive)
}

/// NSGA-II on a subset of at least two objectives; the returned archive is
/// scored and filtered on all of the instance's objectives.
pub fn nsga2_run(inst: &MomkpInstance, mask: &[usize], params: &SolverParams) -> Result<Archive> {
    let all: Vec<usize> = (0..inst.num_profits()).collect();
    let label = mask_label("nsga2", mask);
    nsga2_core(inst, mask, &all, params, &[], &label)
}

pub(crate) fn mask_label(algo: &str, mask: &[usize]) -> String {
    let objs: Vec<String> = mask.iter().map(|k| format!("Z{}", k + 1)).collect();
    format!("{algo}({})", objs.join(","))
}
