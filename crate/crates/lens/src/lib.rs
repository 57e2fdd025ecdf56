//! Analysis and visualisation of relationships between objectives in
//! many-objective approximation sets.
//!
//! The library provides the four analysis steps over a set of non-dominated
//! solutions:
//!
//! 1. [`correlation`] — global pairwise relationships via Kendall rank
//!    correlation, classified as conflicting / harmonious / independent;
//! 2. [`ranges`] — per-objective range statistics and the meaningful /
//!    non-meaningful verdict;
//! 3. [`regionmap`] — Gray-coded trade-off region maps with threshold
//!    sweeps and derived threshold statistics;
//! 4. [`scatter`] — normalised pivot scatter plots for spotting local
//!    relationships.
//!
//! Shared fundamentals (dominance, non-dominated filtering, min-max
//! normalisation and the set file format) live in [`set`], [`objective`]
//! and [`io`]. All operations are pure functions of their inputs; the data
//! types are immutable after construction and safe to share across threads.

pub mod correlation;
pub mod demo;
pub mod error;
pub mod io;
pub mod objective;
pub mod ranges;
pub mod regionmap;
pub mod scatter;
pub mod set;

pub use error::{Error, Result};
pub use objective::{maximise_specs, ObjectiveSpec, ObjectiveVector, Sense, Solution};
pub use set::{dominates, nondominated_filter, normalize, ApproximationSet};
