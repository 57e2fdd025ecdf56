use momkp::MomkpInstance;

use crate::{Error, Result};

/// Configuration of one solver stage.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverParams {
    /// Individuals per generation; at least 2 and even.
    pub population: usize,
    /// Function-evaluation budget per stage; at least `population`.
    pub evaluations: usize,
    /// Probability that two tournament winners are crossed over (otherwise
    /// they are cloned).
    pub crossover_rate: f64,
    /// Per-bit flip probability of the mutation operator.
    pub mutation_rate: f64,
    /// Master seed; pipeline stages fan out with [`crate::mix_seed`].
    pub seed: u64,
    /// Restricts the pipeline to a subset of objectives (strictly increasing
    /// original indices). `None` means all objectives.
    pub objective_mask: Option<Vec<usize>>,
}

impl SolverParams {
    /// Defaults for an instance: population 200, 100k evaluations per stage,
    /// crossover 0.9 and per-bit mutation 1/n.
    pub fn for_instance(inst: &MomkpInstance, seed: u64) -> Self {
        SolverParams {
            population: 200,
            evaluations: 100_000,
            crossover_rate: 0.9,
            mutation_rate: 1.0 / inst.num_items() as f64,
            seed,
            objective_mask: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.population < 2 || !self.population.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "population must be even and at least 2, got {}",
                self.population
            )));
        }
        if self.evaluations < self.population {
            return Err(Error::InvalidArgument(format!(
                "evaluation budget {} is below the population size {}",
                self.evaluations, self.population
            )));
        }
        for (name, rate) in [("crossover", self.crossover_rate), ("mutation", self.mutation_rate)]
        {
            if !(0.0..=1.0).contains(&rate) || !rate.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "{name} rate must lie in [0,1], got {rate}"
                )));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SolverParams {
        SolverParams {
            population: 4,
            evaluations: 100,
            crossover_rate: 0.9,
            mutation_rate: 0.01,
            seed: 0,
            objective_mask: None,
        }
    }

    #[test]
    fn validation_rules() {
        assert!(base().validate().is_ok());
        assert!(SolverParams { population: 3, ..base() }.validate().is_err());
        assert!(SolverParams { population: 0, ..base() }.validate().is_err());
        assert!(SolverParams { evaluations: 3, ..base() }.validate().is_err());
        assert!(SolverParams { crossover_rate: 1.5, ..base() }.validate().is_err());
        assert!(SolverParams { mutation_rate: -0.1, ..base() }.validate().is_err());
    }
}
