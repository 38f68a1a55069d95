use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::problem::{Tour, TspInstance};
use crate::qubo::QuboModel;
use crate::samplers::{Sample, SampleSet};
use crate::{derive_seed, Bits};

/// `count` uniform bit strings of length `num_bits`, reproducible from `seed`.
pub fn random_draws(num_bits: usize, count: u64, seed: u64) -> Vec<Bits> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| (0..num_bits).map(|_| rng.gen_range(0..=1u8)).collect())
        .collect()
}

/// All `num_reads` uniform draws as one sample set.
pub fn sample_random(q: &QuboModel, num_reads: u64, seed: u64) -> Result<SampleSet> {
    if num_reads < 1 {
        return invalid("random sampler needs at least one read");
    }
    let reads = random_draws(q.num_bits(), num_reads, seed);
    Ok(SampleSet::from_reads(q, reads, "random", seed))
}

/// Best-of-`num_draws` random strings, repeated `repetitions` times.
///
/// Each returned set holds a single read, the lowest-energy draw of that
/// repetition (first one on ties). Repetition `r` draws from
/// `derive_seed(seed, r)`, which is also recorded as the set's seed, so
/// [`random_draws`] replays it.
pub fn sample_random_baseline(q: &QuboModel, num_draws: u64, repetitions: usize, seed: u64) -> Result<Vec<SampleSet>> {
    if num_draws < 1 || repetitions < 1 {
        return invalid("random baseline needs num_draws >= 1 and repetitions >= 1");
    }
    Ok((0..repetitions)
        .map(|r| {
            let rep_seed = derive_seed(seed, r as u64);
            let mut best: Option<(Bits, f64)> = None;
            for bits in random_draws(q.num_bits(), num_draws, rep_seed) {
                let e = q.energy(&bits);
                if best.as_ref().is_none_or(|(_, b)| e < *b) {
                    best = Some((bits, e));
                }
            }
            let (bits, energy) = best.expect("at least one draw");
            SampleSet::from_entries(
                vec![Sample {
                    bits,
                    energy,
                    occurrences: 1,
                }],
                1,
                "random-baseline",
                rep_seed,
            )
        })
        .collect())
}

/// Uniformly random tours with the depot first.
pub fn sample_random_tour_baseline(inst: &TspInstance, repetitions: usize, seed: u64) -> Result<Vec<Tour>> {
    if repetitions < 1 {
        return invalid("random tour baseline needs repetitions >= 1");
    }
    let n = inst.num_cities();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..repetitions)
        .map(|_| {
            let mut rest: Vec<usize> = (1..n).collect();
            rest.shuffle(&mut rng);
            let mut order = vec![0];
            order.extend(rest);
            Tour::new(order).expect("shuffled permutation")
        })
        .collect())
}
