//! Hybrid branch-and-bound toolkit.
//!
//! Classical branch-and-bound for binary linear problems, knapsack and the
//! traveling salesman problem; QUBO and Ising reductions; samplers standing
//! in for a quantum annealer; the hybrid protocol that stops branching once a
//! residual problem fits a qubit budget; solution-quality metrics; and a
//! small exact-diagonalization lab for the transverse-field annealing
//! Hamiltonian.

pub mod branch_bound;
pub mod error;
pub mod hybrid;
pub mod metrics;
pub mod problem;
pub mod qubo;
pub mod samplers;
pub mod spectrum;

pub use error::{Error, Result};

/// Absolute tolerance used for feasibility checks and energy ties.
pub const TOLERANCE: f64 = 1e-9;

/// Binary vectors are stored as one byte per variable, each 0 or 1.
pub type Bits = Vec<u8>;

pub(crate) fn check_bits(bits: &[u8], expected: usize) -> Result<()> {
    if bits.len() != expected {
        return Err(Error::Dimension {
            what: "bit vector",
            expected,
            got: bits.len(),
        });
    }
    if let Some(pos) = bits.iter().position(|&b| b > 1) {
        return Err(Error::InvalidInput(format!(
            "bit {pos} has value {}, expected 0 or 1",
            bits[pos]
        )));
    }
    Ok(())
}

/// SplitMix64 step, used to derive independent sub-seeds.
pub fn derive_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed
        .wrapping_add(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(index.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
