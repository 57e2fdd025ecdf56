//! Objective-space fundamentals: optimisation senses, objective vectors and
//! solutions carrying them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Direction in which an objective is optimised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    #[serde(rename = "max")]
    Maximise,
    #[serde(rename = "min")]
    Minimise,
}

impl Sense {
    /// True when `a` is strictly better than `b` under this sense.
    #[inline]
    pub fn better(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Maximise => a > b,
            Sense::Minimise => a < b,
        }
    }

    /// True when `a` is at least as good as `b` under this sense.
    #[inline]
    pub fn at_least_as_good(self, a: f64, b: f64) -> bool {
        match self {
            Sense::Maximise => a >= b,
            Sense::Minimise => a <= b,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Sense::Maximise => "max",
            Sense::Minimise => "min",
        }
    }

    pub fn parse_token(tok: &str) -> Option<Sense> {
        match tok.to_ascii_lowercase().as_str() {
            "max" | "maximise" | "maximize" => Some(Sense::Maximise),
            "min" | "minimise" | "minimize" => Some(Sense::Minimise),
            _ => None,
        }
    }
}

/// Name and optimisation sense of one objective; fixes the meaning of "good".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectiveSpec {
    pub name: String,
    pub sense: Sense,
}

impl ObjectiveSpec {
    pub fn maximise(name: impl Into<String>) -> Self {
        ObjectiveSpec { name: name.into(), sense: Sense::Maximise }
    }

    pub fn minimise(name: impl Into<String>) -> Self {
        ObjectiveSpec { name: name.into(), sense: Sense::Minimise }
    }
}

/// Convenience constructor for the common all-maximise case: `Z1 .. Zm`.
pub fn maximise_specs(m: usize) -> Vec<ObjectiveSpec> {
    (1..=m).map(|i| ObjectiveSpec::maximise(format!("Z{i}"))).collect()
}

/// One point in objective space; entry `k` holds the value of objective `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveVector(Vec<f64>);

impl ObjectiveVector {
    /// Builds a vector, rejecting non-finite entries.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::argument("objective vector must not be empty"));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::argument(format!("non-finite objective value {v}")));
        }
        Ok(ObjectiveVector(values))
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for ObjectiveVector {
    type Output = f64;

    #[inline]
    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl AsRef<[f64]> for ObjectiveVector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

/// A solution: its objective vector, optionally the decision vector that
/// produced it, and a provenance tag (solver stage or input file).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution {
    pub objectives: ObjectiveVector,
    /// Decision bits (0/1 per variable) when known.
    pub decision: Option<Vec<u8>>,
    pub origin: String,
}

impl Solution {
    pub fn new(objectives: ObjectiveVector, origin: impl Into<String>) -> Self {
        Solution { objectives, decision: None, origin: origin.into() }
    }

    pub fn with_decision(
        objectives: ObjectiveVector,
        decision: Vec<u8>,
        origin: impl Into<String>,
    ) -> Self {
        Solution { objectives, decision: Some(decision), origin: origin.into() }
    }
}
