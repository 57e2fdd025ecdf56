//! Seeded instance generators for the five MOMKP benchmark families.
//!
//! All integer draws are uniform and inclusive of both endpoints; real draws
//! are uniform over [0,1). Generation is fully determined by the seed and the
//! fixed per-item draw order, so equal seeds give bit-identical instances.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::instance::{MomkpInstance, SetKind};
use crate::{Error, Result};

/// How knapsack capacities are derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CapacityRule {
    /// The same fixed capacity in every weight dimension.
    Fixed(u64),
    /// Capacity proportional to the item count: `per_item * n` in every
    /// dimension. `PerItem(50)` matches `Fixed(50000)` at n = 1000 and keeps
    /// the fill ratio comparable when scaling n down.
    PerItem(u64),
}

impl CapacityRule {
    fn capacity(self, n: usize) -> u64 {
        match self {
            CapacityRule::Fixed(w) => w,
            CapacityRule::PerItem(c) => c * n as u64,
        }
    }
}

/// Draws an inclusive uniform integer from the raw interval clamped to
/// `bounds`. The recipes never produce an empty clamped interval, but if one
/// ever appears the nearer global endpoint is used.
fn draw_clamped<R: Rng>(rng: &mut R, lo_raw: i64, hi_raw: i64, bounds: (i64, i64)) -> u32 {
    let lo = lo_raw.max(bounds.0);
    let hi = hi_raw.min(bounds.1);
    if lo > hi {
        return if lo_raw > bounds.1 { bounds.1 as u32 } else { bounds.0 as u32 };
    }
    rng.gen_range(lo..=hi) as u32
}

fn uniform<R: Rng>(rng: &mut R, lo: u32, hi: u32) -> u32 {
    rng.gen_range(lo..=hi)
}

/// Which rule produced a set-X item's profits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum XBranch {
    /// c1, c2 high; c3, c4 low.
    HighOneTwo,
    /// c3, c4 high; c1, c2 low.
    HighThreeFour,
    /// c1, c3 high; c2, c4 low.
    HighOneThree,
    /// c2, c3 high; c1, c4 low.
    HighTwoThree,
    /// All profits uniform over [0,1000].
    Uniform,
}

/// Draws one set-X item: profits by the branching rule on a uniform real,
/// weights as fixed sums of three profits each.
pub fn x_item<R: Rng>(rng: &mut R) -> ([u32; 4], [u32; 4], XBranch) {
    let r: f64 = rng.gen();
    let (c, branch) = if r <= 0.1 {
        let c1 = uniform(rng, 900, 1000);
        let c2 = uniform(rng, c1, 1000);
        let c3 = uniform(rng, 0, 100);
        let c4 = uniform(rng, 0, 100);
        ([c1, c2, c3, c4], XBranch::HighOneTwo)
    } else if r <= 0.2 {
        let c3 = uniform(rng, 900, 1000);
        let c4 = uniform(rng, c3, 1000);
        let c1 = uniform(rng, 0, 100);
        let c2 = uniform(rng, 0, 100);
        ([c1, c2, c3, c4], XBranch::HighThreeFour)
    } else if r <= 0.3 {
        let c1 = uniform(rng, 900, 1000);
        let c3 = uniform(rng, c1, 1000);
        let c2 = uniform(rng, 0, 100);
        let c4 = uniform(rng, 0, 100);
        ([c1, c2, c3, c4], XBranch::HighOneThree)
    } else if r <= 0.4 {
        let c2 = uniform(rng, 900, 1000);
        let c3 = uniform(rng, 900, 1000);
        let c1 = uniform(rng, 0, 100);
        let c4 = uniform(rng, 0, 100);
        ([c1, c2, c3, c4], XBranch::HighTwoThree)
    } else {
        let mut c = [0u32; 4];
        for v in &mut c {
            *v = uniform(rng, 0, 1000);
        }
        (c, XBranch::Uniform)
    };
    let w = [
        c[0] + c[1] + c[2],
        c[1] + c[2] + c[3],
        c[0] + c[2] + c[3],
        c[0] + c[1] + c[3],
    ];
    (c, w, branch)
}

/// Generates an instance of the requested family.
///
/// Sets B, C, D and X are defined for exactly four profits; D and X
/// additionally fix four weight dimensions. Set A accepts any m, p >= 1.
pub fn generate(
    kind: SetKind,
    n: usize,
    m: usize,
    p: usize,
    capacity: CapacityRule,
    seed: u64,
) -> Result<MomkpInstance> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one item".into()));
    }
    if m == 0 || p == 0 {
        return Err(Error::InvalidArgument("m and p must be at least 1".into()));
    }
    match kind {
        SetKind::A => {}
        SetKind::B | SetKind::C => {
            if p != 4 {
                return Err(Error::InvalidArgument(format!(
                    "set {} is defined for p = 4 profits, got {p}",
                    kind.token()
                )));
            }
        }
        SetKind::D | SetKind::X => {
            if p != 4 || m != 4 {
                return Err(Error::InvalidArgument(format!(
                    "set {} is defined for m = 4 and p = 4, got m={m}, p={p}",
                    kind.token()
                )));
            }
        }
        SetKind::External => {
            return Err(Error::InvalidArgument(
                "external instances are loaded from files, not generated".into(),
            ))
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = Vec::with_capacity(n);
    let mut profits = Vec::with_capacity(n);

    for _ in 0..n {
        match kind {
            SetKind::A => {
                // independent random: weights then profits, all in [1,1000]
                weights.push((0..m).map(|_| uniform(&mut rng, 1, 1000)).collect::<Vec<_>>());
                profits.push((0..p).map(|_| uniform(&mut rng, 1, 1000)).collect::<Vec<_>>());
            }
            SetKind::B => {
                // harmonious: each profit within +/-100 of its predecessor
                weights.push((0..m).map(|_| uniform(&mut rng, 1, 1000)).collect::<Vec<_>>());
                let mut c = Vec::with_capacity(4);
                c.push(uniform(&mut rng, 1, 1000));
                for k in 1..4 {
                    let prev = c[k - 1] as i64;
                    c.push(draw_clamped(&mut rng, prev - 100, prev + 100, (1, 1000)));
                }
                profits.push(c);
            }
            SetKind::C => {
                // conflicting: consecutive profits sum to about 1000
                weights.push((0..m).map(|_| uniform(&mut rng, 1, 1000)).collect::<Vec<_>>());
                let mut c = Vec::with_capacity(4);
                c.push(uniform(&mut rng, 1, 1000));
                for k in 1..4 {
                    let prev = c[k - 1] as i64;
                    c.push(draw_clamped(&mut rng, 900 - prev, 1100 - prev, (1, 1000)));
                }
                profits.push(c);
            }
            SetKind::D => {
                // profits as in set C; weights tied to profit differences.
                // weight j couples to the profit pair (j, j-1), and weight 1
                // to the pair (1, 4).
                let mut c = Vec::with_capacity(4);
                c.push(uniform(&mut rng, 1, 1000));
                for k in 1..4 {
                    let prev = c[k - 1] as i64;
                    c.push(draw_clamped(&mut rng, 900 - prev, 1100 - prev, (1, 1000)));
                }
                let mut w = Vec::with_capacity(4);
                let d1 = (c[0] as i64 - c[3] as i64).abs();
                w.push(draw_clamped(&mut rng, 900 - d1, 1100 - d1, (1, 1000)));
                for j in 1..4 {
                    let d = (c[j] as i64 - c[j - 1] as i64).abs();
                    w.push(draw_clamped(&mut rng, 900 - d, 1100 - d, (1, 1000)));
                }
                weights.push(w);
                profits.push(c);
            }
            SetKind::X => {
                let (c, w, _) = x_item(&mut rng);
                weights.push(w.to_vec());
                profits.push(c.to_vec());
            }
            SetKind::External => unreachable!(),
        }
    }

    let cap = capacity.capacity(n);
    MomkpInstance::new(vec![cap; m], weights, profits, kind, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_a_bounds() {
        let inst = generate(SetKind::A, 500, 4, 4, CapacityRule::PerItem(50), 11).unwrap();
        assert_eq!(inst.capacities(), &[25000; 4]);
        for item in 0..inst.num_items() {
            assert!(inst.weights(item).iter().all(|&w| (1..=1000).contains(&w)));
            assert!(inst.profits(item).iter().all(|&c| (1..=1000).contains(&c)));
        }
    }

    #[test]
    fn set_b_profits_stay_close() {
        let inst = generate(SetKind::B, 500, 4, 4, CapacityRule::Fixed(50000), 3).unwrap();
        for item in 0..inst.num_items() {
            let c = inst.profits(item);
            for k in 1..4 {
                let diff = (c[k] as i64 - c[k - 1] as i64).abs();
                assert!(diff <= 100, "item {item}: |c{}-c{}| = {diff}", k + 1, k);
            }
        }
    }

    #[test]
    fn set_c_adjacent_profits_sum_near_thousand() {
        let inst = generate(SetKind::C, 500, 4, 4, CapacityRule::Fixed(50000), 5).unwrap();
        for item in 0..inst.num_items() {
            let c = inst.profits(item);
            for k in 1..4 {
                let sum = c[k] as i64 + c[k - 1] as i64;
                assert!((900..=1100).contains(&sum), "item {item}: c{}+c{} = {sum}", k + 1, k);
            }
        }
    }

    #[test]
    fn set_d_weights_track_profit_differences() {
        let inst = generate(SetKind::D, 500, 4, 4, CapacityRule::Fixed(50000), 7).unwrap();
        for item in 0..inst.num_items() {
            let c = inst.profits(item);
            let w = inst.weights(item);
            let d1 = (c[0] as i64 - c[3] as i64).abs();
            assert!((900..=1100).contains(&(w[0] as i64 + d1)));
            for j in 1..4 {
                let d = (c[j] as i64 - c[j - 1] as i64).abs();
                assert!((900..=1100).contains(&(w[j] as i64 + d)));
            }
        }
    }

    #[test]
    fn set_x_weight_identities_hold_exactly() {
        let inst = generate(SetKind::X, 500, 4, 4, CapacityRule::Fixed(50000), 9).unwrap();
        for item in 0..inst.num_items() {
            let c = inst.profits(item);
            let w = inst.weights(item);
            assert_eq!(w[0], c[0] + c[1] + c[2]);
            assert_eq!(w[1], c[1] + c[2] + c[3]);
            assert_eq!(w[2], c[0] + c[2] + c[3]);
            assert_eq!(w[3], c[0] + c[1] + c[3]);
        }
    }

    #[test]
    fn equal_seeds_give_identical_instances() {
        for kind in [SetKind::A, SetKind::B, SetKind::C, SetKind::D, SetKind::X] {
            let a = generate(kind, 50, 4, 4, CapacityRule::PerItem(50), 42).unwrap();
            let b = generate(kind, 50, 4, 4, CapacityRule::PerItem(50), 42).unwrap();
            assert_eq!(a, b);
            let c = generate(kind, 50, 4, 4, CapacityRule::PerItem(50), 43).unwrap();
            assert_ne!(a, c);
        }
    }

    #[test]
    fn unsupported_shapes_are_rejected() {
        assert!(generate(SetKind::B, 10, 4, 3, CapacityRule::Fixed(1), 0).is_err());
        assert!(generate(SetKind::X, 10, 3, 4, CapacityRule::Fixed(1), 0).is_err());
        assert!(generate(SetKind::D, 10, 2, 4, CapacityRule::Fixed(1), 0).is_err());
        assert!(generate(SetKind::A, 0, 4, 4, CapacityRule::Fixed(1), 0).is_err());
        assert!(generate(SetKind::A, 10, 2, 3, CapacityRule::Fixed(1), 0).is_ok());
    }

    #[test]
    fn x_branches_give_at_most_two_high_profits() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..2000 {
            let (c, _, branch) = x_item(&mut rng);
            if branch != XBranch::Uniform {
                let high = c.iter().filter(|&&v| v > 500).count();
                assert_eq!(high, 2, "branch {branch:?} produced {high} high profits: {c:?}");
            }
        }
    }
}
