//! Generational single-objective GA: binary tournament selection on one
//! profit objective, half-uniform crossover, bit-flip mutation and repair to
//! feasibility.

use momkp::MomkpInstance;
use pareto_lens::{ObjectiveVector, Solution};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ops::{birth, random_bits, vary, Individual};
use crate::params::SolverParams;
use crate::{Error, Result};

/// Runs the GA maximising a single objective and returns the best-of-run
/// solution, scored on all objectives. Deterministic given the seed.
pub fn soga(inst: &MomkpInstance, objective: usize, params: &SolverParams) -> Result<Vec<Solution>> {
    params.validate()?;
    if objective >= inst.num_profits() {
        return Err(Error::InvalidArgument(format!(
            "objective {objective} out of range for p={}",
            inst.num_profits()
        )));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = inst.num_items();
    let mut evals = 0usize;

    let mut population: Vec<Individual> = (0..params.population)
        .map(|_| birth(inst, random_bits(n, &mut rng), &mut rng, &mut evals))
        .collect::<Result<_>>()?;

    let mut best = best_of(&population, objective).clone();

    while evals + 2 <= params.evaluations {
        let mut children = Vec::with_capacity(params.population);
        while children.len() < params.population && evals + 2 <= params.evaluations {
            let a = tournament(&population, objective, &mut rng);
            let b = tournament(&population, objective, &mut rng);
            let (c1, c2) = vary(
                &population[a].bits,
                &population[b].bits,
                params.crossover_rate,
                params.mutation_rate,
                &mut rng,
            )?;
            children.push(birth(inst, c1, &mut rng, &mut evals)?);
            children.push(birth(inst, c2, &mut rng, &mut evals)?);
        }
        if children.is_empty() {
            break;
        }
        population = children;
        let generation_best = best_of(&population, objective);
        if generation_best.objectives[objective] > best.objectives[objective] {
            best = generation_best.clone();
        }
    }

    Ok(vec![Solution::with_decision(
        ObjectiveVector::new(best.objectives.clone())
            .map_err(|e| Error::InvalidArgument(e.to_string()))?,
        best.bits.iter().map(|&b| b as u8).collect(),
        format!("soga(Z{})", objective + 1),
    )])
}

fn best_of(population: &[Individual], objective: usize) -> &Individual {
    population
        .iter()
        .max_by(|a, b| a.objectives[objective].total_cmp(&b.objectives[objective]))
        .expect("population is never empty")
}

fn tournament<R: Rng>(population: &[Individual], objective: usize, rng: &mut R) -> usize {
    let a = rng.gen_range(0..population.len());
    let b = rng.gen_range(0..population.len());
    if population[a].objectives[objective] >= population[b].objectives[objective] {
        a
    } else {
        b
    }
}
