//! Shared variation operators and seed derivation.

use momkp::{MomkpInstance, Selection};
use rand::Rng;

use crate::{Error, Result};

/// Derives a stage seed from the master seed and a stage index
/// (splitmix64-style mixing), so stages are independently reproducible.
pub fn mix_seed(master: u64, stream: u64) -> u64 {
    let mut z = master ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Half-uniform crossover: of the `h` positions where the parents differ,
/// exactly `h/2` (rounded down), chosen uniformly without replacement, are
/// exchanged. Equal positions are left untouched.
pub fn hux_crossover<R: Rng>(
    a: &[bool],
    b: &[bool],
    rng: &mut R,
) -> Result<(Vec<bool>, Vec<bool>)> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    let mut child_a = a.to_vec();
    let mut child_b = b.to_vec();
    let mut differing: Vec<usize> =
        (0..a.len()).filter(|&i| a[i] != b[i]).collect();
    let swaps = differing.len() / 2;
    // partial Fisher-Yates: the first `swaps` entries become the exchange set
    for s in 0..swaps {
        let pick = rng.gen_range(s..differing.len());
        differing.swap(s, pick);
        let i = differing[s];
        child_a[i] = b[i];
        child_b[i] = a[i];
    }
    Ok((child_a, child_b))
}

/// Flips each bit independently with probability `rate`.
pub fn bitflip_mutation<R: Rng>(bits: &mut [bool], rate: f64, rng: &mut R) {
    for bit in bits.iter_mut() {
        if rng.gen_bool(rate) {
            *bit = !*bit;
        }
    }
}

/// A feasible individual with its full profit vector.
#[derive(Debug, Clone)]
pub(crate) struct Individual {
    pub bits: Vec<bool>,
    /// All `p` profit objectives, in instance order.
    pub objectives: Vec<f64>,
}

/// Repairs, evaluates and counts one candidate against the budget.
pub(crate) fn birth<R: Rng>(
    inst: &MomkpInstance,
    bits: Vec<bool>,
    rng: &mut R,
    evals: &mut usize,
) -> Result<Individual> {
    let repaired = inst.repair(Selection(bits), rng)?;
    let objectives = inst.evaluate(&repaired)?.values().to_vec();
    *evals += 1;
    Ok(Individual { bits: repaired.0, objectives })
}

/// Uniformly random candidate bits.
pub(crate) fn random_bits<R: Rng>(n: usize, rng: &mut R) -> Vec<bool> {
    (0..n).map(|_| rng.gen_bool(0.5)).collect()
}

/// Applies crossover (with probability `crossover_rate`) and mutation to two
/// parents, yielding two candidate bit vectors.
pub(crate) fn vary<R: Rng>(
    parent_a: &[bool],
    parent_b: &[bool],
    crossover_rate: f64,
    mutation_rate: f64,
    rng: &mut R,
) -> Result<(Vec<bool>, Vec<bool>)> {
    let (mut c1, mut c2) = if rng.gen_bool(crossover_rate) {
        hux_crossover(parent_a, parent_b, rng)?
    } else {
        (parent_a.to_vec(), parent_b.to_vec())
    };
    bitflip_mutation(&mut c1, mutation_rate, rng);
    bitflip_mutation(&mut c2, mutation_rate, rng);
    Ok((c1, c2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn hamming(a: &[bool], b: &[bool]) -> usize {
        a.iter().zip(b).filter(|(x, y)| x != y).count()
    }

    #[test]
    fn equal_parents_produce_equal_children() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let a = vec![true, false, true, false];
        let (c1, c2) = hux_crossover(&a, &a, &mut rng).unwrap();
        assert_eq!(c1, a);
        assert_eq!(c2, a);
    }

    #[test]
    fn opposite_parents_swap_exactly_half() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let a = vec![false; 4];
        let b = vec![true; 4];
        for _ in 0..50 {
            let (c1, c2) = hux_crossover(&a, &b, &mut rng).unwrap();
            assert_eq!(hamming(&c1, &a), 2);
            assert_eq!(hamming(&c2, &b), 2);
            // exchanges are mirrored
            for i in 0..4 {
                assert_ne!(c1[i], c2[i]);
            }
        }
    }

    #[test]
    fn exchange_count_is_floor_half_of_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for trial in 0..1000 {
            let n = 100;
            let a: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            let b: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
            let h = hamming(&a, &b);
            let (c1, _) = hux_crossover(&a, &b, &mut rng).unwrap();
            assert_eq!(hamming(&c1, &a), h / 2, "trial {trial}");
            // untouched positions stay equal to both parents
            for i in 0..n {
                if a[i] == b[i] {
                    assert_eq!(c1[i], a[i]);
                }
            }
        }
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(hux_crossover(&[true], &[true, false], &mut rng).is_err());
    }

    #[test]
    fn mix_seed_spreads_streams() {
        let seeds: Vec<u64> = (0..100).map(|i| mix_seed(42, i)).collect();
        let mut unique = seeds.clone();
        unique.sort_unstable();
        unique.dedup();
        assert_eq!(unique.len(), seeds.len());
        assert_ne!(mix_seed(42, 0), mix_seed(43, 0));
    }
}
