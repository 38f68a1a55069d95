use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::qubo::QuboModel;
use crate::samplers::{SampleSet, SamplerParams};
use crate::{derive_seed, Bits};

/// Inverse temperatures for each sweep, geometric from `beta_initial` to
/// `beta_final` inclusive. A single sweep runs at `beta_final`.
pub fn geometric_betas(beta_initial: f64, beta_final: f64, sweeps: usize) -> Vec<f64> {
    match sweeps {
        0 => Vec::new(),
        1 => vec![beta_final],
        _ => {
            let ratio = (beta_final / beta_initial).ln() / (sweeps - 1) as f64;
            (0..sweeps).map(|k| beta_initial * (ratio * k as f64).exp()).collect()
        }
    }
}

/// Simulated annealing with single-bit Metropolis moves.
///
/// Every read is an independent restart from a uniform random string driven
/// by its own generator seeded with `derive_seed(p.seed, read)`, so the result
/// does not depend on how restarts are scheduled.
pub fn sample_sa(q: &QuboModel, p: &SamplerParams) -> Result<SampleSet> {
    p.validate()?;
    let m = q.num_bits();
    if m == 0 {
        return invalid("simulated annealing needs at least one bit");
    }
    let coupling = q.dense_couplings();
    let betas = geometric_betas(p.beta_initial, p.beta_final, p.sweeps);
    let reads: Vec<Bits> = (0..p.num_reads)
        .map(|r| anneal_once(q.linear(), &coupling, &betas, derive_seed(p.seed, r)))
        .collect();
    Ok(SampleSet::from_reads(q, reads, "sa", p.seed))
}

fn anneal_once(linear: &[f64], coupling: &[f64], betas: &[f64], seed: u64) -> Bits {
    let m = linear.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bits: Bits = (0..m).map(|_| rng.gen_range(0..=1u8)).collect();
    // field[i] = energy change from setting bit i to 1 given the others
    let mut field = linear.to_vec();
    for i in 0..m {
        if bits[i] == 1 {
            let row = &coupling[i * m..(i + 1) * m];
            for (f, c) in field.iter_mut().zip(row) {
                *f += c;
            }
        }
    }
    for &beta in betas {
        for _ in 0..m {
            let i = rng.gen_range(0..m);
            let delta = if bits[i] == 0 { field[i] } else { -field[i] };
            // exp(-40) is far below the resolution of a uniform f64 draw
            let accept = delta <= 0.0 || (beta * delta < 40.0 && rng.gen::<f64>() < (-beta * delta).exp());
            if accept {
                let sign = if bits[i] == 0 { 1.0 } else { -1.0 };
                bits[i] ^= 1;
                let row = &coupling[i * m..(i + 1) * m];
                for (f, c) in field.iter_mut().zip(row) {
                    *f += sign * c;
                }
            }
        }
    }
    bits
}
