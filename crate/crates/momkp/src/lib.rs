//! The multiobjective multidimensional 0-1 knapsack problem (MOMKP):
//! `n` items with `m` weights and `p` profits each; select items to maximise
//! all `p` profit sums without exceeding any of the `m` knapsack capacities.
//!
//! The crate provides seeded instance generators for five benchmark families
//! with distinct objective relationships, profit evaluation, feasibility
//! checking, a ratio-greedy repair operator and a plain-text instance format.

mod generate;
mod instance;
mod io;

pub use generate::{generate, x_item, CapacityRule, XBranch};
pub use instance::{MomkpInstance, Selection, SetKind};
pub use io::{format_instance, parse_instance, read_instance_file, write_instance_file};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
