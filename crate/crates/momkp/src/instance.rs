use pareto_lens::ObjectiveVector;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Benchmark family of an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SetKind {
    /// Independent random weights and profits.
    A,
    /// Harmonious profits: consecutive profits within ±100 of each other.
    B,
    /// Conflicting profits: consecutive profits sum to roughly 1000.
    C,
    /// Like C, with weights correlated to the profit conflicts.
    D,
    /// Misleading set: every item has high values in at most two profits and
    /// weights equal to sums of three profits.
    X,
    /// Loaded from a file of unknown provenance.
    External,
}

impl SetKind {
    pub fn token(self) -> &'static str {
        match self {
            SetKind::A => "A",
            SetKind::B => "B",
            SetKind::C => "C",
            SetKind::D => "D",
            SetKind::X => "X",
            SetKind::External => "EXT",
        }
    }

    pub fn parse_token(tok: &str) -> Option<SetKind> {
        match tok.to_ascii_uppercase().as_str() {
            "A" => Some(SetKind::A),
            "B" => Some(SetKind::B),
            "C" => Some(SetKind::C),
            "D" => Some(SetKind::D),
            "X" => Some(SetKind::X),
            "EXT" | "EXTERNAL" => Some(SetKind::External),
            _ => None,
        }
    }
}

/// A 0-1 selection of items.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Selection(pub Vec<bool>);

impl Selection {
    pub fn zeros(n: usize) -> Self {
        Selection(vec![false; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> Vec<u8> {
        self.0.iter().map(|&b| b as u8).collect()
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Selection(bits.iter().map(|&b| b != 0).collect())
    }
}

/// One MOMKP instance: `n` items, `m` weight dimensions with capacities, and
/// `p` profit objectives.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomkpInstance {
    pub(crate) n: usize,
    pub(crate) m: usize,
    pub(crate) p: usize,
    pub(crate) capacities: Vec<u64>,
    /// weights[item][j]
    pub(crate) weights: Vec<Vec<u32>>,
    /// profits[item][k]
    pub(crate) profits: Vec<Vec<u32>>,
    pub(crate) kind: SetKind,
    pub(crate) seed: u64,
}

impl MomkpInstance {
    pub fn new(
        capacities: Vec<u64>,
        weights: Vec<Vec<u32>>,
        profits: Vec<Vec<u32>>,
        kind: SetKind,
        seed: u64,
    ) -> Result<Self> {
        let n = weights.len();
        if n == 0 || profits.len() != n {
            return Err(Error::InvalidInstance(format!(
                "need matching non-empty item lists, got {} weights and {} profits",
                n,
                profits.len()
            )));
        }
        let m = capacities.len();
        let p = profits[0].len();
        if m == 0 || p == 0 {
            return Err(Error::InvalidInstance("m and p must be at least 1".into()));
        }
        if let Some(bad) = weights.iter().position(|w| w.len() != m) {
            return Err(Error::InvalidInstance(format!("item {bad} has wrong weight arity")));
        }
        if let Some(bad) = profits.iter().position(|c| c.len() != p) {
            return Err(Error::InvalidInstance(format!("item {bad} has wrong profit arity")));
        }
        Ok(MomkpInstance { n, m, p, capacities, weights, profits, kind, seed })
    }

    pub fn num_items(&self) -> usize {
        self.n
    }

    pub fn num_weights(&self) -> usize {
        self.m
    }

    pub fn num_profits(&self) -> usize {
        self.p
    }

    pub fn capacities(&self) -> &[u64] {
        &self.capacities
    }

    pub fn weights(&self, item: usize) -> &[u32] {
        &self.weights[item]
    }

    pub fn profits(&self, item: usize) -> &[u32] {
        &self.profits[item]
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Stable identifier, used to tag approximation sets and file names.
    pub fn instance_id(&self) -> String {
        format!("momkp-{}-n{}-s{}", self.kind.token(), self.n, self.seed)
    }

    fn check_len(&self, x: &Selection) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        Ok(())
    }

    /// The `p` profit sums of a selection. Does not check feasibility.
    pub fn evaluate(&self, x: &Selection) -> Result<ObjectiveVector> {
        self.check_len(x)?;
        let mut sums = vec![0u64; self.p];
        for (item, &selected) in x.0.iter().enumerate() {
            if selected {
                for (k, &c) in self.profits[item].iter().enumerate() {
                    sums[k] += c as u64;
                }
            }
        }
        ObjectiveVector::new(sums.into_iter().map(|s| s as f64).collect())
            .map_err(|e| Error::InvalidArgument(e.to_string()))
    }

    /// Weight totals of a selection, one per dimension.
    pub fn weight_sums(&self, x: &Selection) -> Result<Vec<u64>> {
        self.check_len(x)?;
        let mut sums = vec![0u64; self.m];
        for (item, &selected) in x.0.iter().enumerate() {
            if selected {
                for (j, &w) in self.weights[item].iter().enumerate() {
                    sums[j] += w as u64;
                }
            }
        }
        Ok(sums)
    }

    /// True when every weight total is within its capacity (inclusive).
    pub fn feasible(&self, x: &Selection) -> Result<bool> {
        Ok(self
            .weight_sums(x)?
            .iter()
            .zip(&self.capacities)
            .all(|(&sum, &cap)| sum <= cap))
    }

    /// Profit-per-weight density of an item; items with zero total weight
    /// never hurt feasibility and get infinite density.
    pub fn density(&self, item: usize) -> f64 {
        let profit: u64 = self.profits[item].iter().map(|&c| c as u64).sum();
        let weight: u64 = self.weights[item].iter().map(|&w| w as u64).sum();
        if weight == 0 {
            f64::INFINITY
        } else {
            profit as f64 / weight as f64
        }
    }

    /// Makes a selection feasible by dropping, while any capacity is
    /// exceeded, the selected item with the lowest profit/weight density.
    /// Density ties are broken uniformly at random with the supplied RNG, so
    /// the result is deterministic given the RNG state. Never adds items; a
    /// feasible input is returned unchanged.
    pub fn repair<R: Rng>(&self, x: Selection, rng: &mut R) -> Result<Selection> {
        self.check_len(&x)?;
        let mut x = x;
        let mut sums = self.weight_sums(&x)?;
        let over =
            |sums: &[u64]| sums.iter().zip(&self.capacities).any(|(&s, &cap)| s > cap);
        while over(&sums) {
            let mut best = f64::INFINITY;
            let mut ties: Vec<usize> = Vec::new();
            for (item, &selected) in x.0.iter().enumerate() {
                if !selected {
                    continue;
                }
                let d = self.density(item);
                if d < best {
                    best = d;
                    ties.clear();
                    ties.push(item);
                } else if d == best {
                    ties.push(item);
                }
            }
            // an over-capacity selection always has a removable item with
            // finite density: zero-weight items cannot contribute overweight
            debug_assert!(!ties.is_empty());
            let victim = ties[rng.gen_range(0..ties.len())];
            x.0[victim] = false;
            for (j, &w) in self.weights[victim].iter().enumerate() {
                sums[j] -= w as u64;
            }
        }
        Ok(x)
    }
}
