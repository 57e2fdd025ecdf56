//! Evolutionary machinery that produces MOMKP approximation sets: a
//! single-objective GA, NSGA-II, a Tchebycheff-decomposition GA, half-uniform
//! crossover, and the archive-seeded multi-stage pipeline combining them.
//!
//! Every run is deterministic given its seed. Pipeline stages derive their
//! own seeds from the master seed and the stage index, so stages are
//! independently reproducible and may execute in parallel.

mod archive;
mod moead;
mod nsga2;
mod ops;
mod params;
mod pipeline;
mod soga;

pub use archive::Archive;
pub use moead::{decomposition_run, weight_lattice};
pub use nsga2::{crowding_distances, fast_nondominated_sort, nsga2_run};
pub use ops::{hux_crossover, mix_seed};
pub use params::SolverParams;
pub use pipeline::{active_specs, pipeline_stages, run_stage, seeded_pipeline, StageKind, StageSpec};
pub use soga::soga;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error(transparent)]
    Momkp(#[from] momkp::Error),

    #[error(transparent)]
    Lens(#[from] pareto_lens::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Validates an objective mask against the instance's profit count: at least
/// `min_len` distinct, in-range indices, in strictly increasing order.
pub(crate) fn check_mask(mask: &[usize], p: usize, min_len: usize) -> Result<()> {
    if mask.len() < min_len {
        return Err(Error::InvalidArgument(format!(
            "objective mask needs at least {min_len} objectives, got {}",
            mask.len()
        )));
    }
    for pair in mask.windows(2) {
        if pair[0] >= pair[1] {
            return Err(Error::InvalidArgument(
                "objective mask must be strictly increasing".into(),
            ));
        }
    }
    if let Some(&bad) = mask.iter().find(|&&k| k >= p) {
        return Err(Error::InvalidArgument(format!(
            "objective index {bad} out of range for p={p}"
        )));
    }
    Ok(())
}
