//! Branch-and-bound that hands residual problems to a sampler.
//!
//! The classical search branches until the remaining subproblem fits a qubit
//! budget, then encodes that residual as a QUBO and submits it to a
//! [`Sampler`] (one quantum call). Only feasible samples update the
//! incumbent. The trace counts classical work as nodes whose bound was
//! evaluated plus incumbent improvements found classically, and quantum work
//! as sampler submissions.

mod knapsack;
mod study;
mod tsp;

use serde::{Deserialize, Serialize};

use crate::derive_seed;
use crate::error::{invalid, Result};
use crate::problem::{BitSolution, Tour};
use crate::samplers::{SampleSet, Sampler, SamplerKind, SamplerParams};

pub use knapsack::{hybrid_kp, hybrid_kp_with};
pub use study::{call_count_study, tsp_call_count_study, CallCountRow};
pub use tsp::{hybrid_tsp, hybrid_tsp_with};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HybridConfig {
    /// Largest QUBO, in bits, that may be submitted.
    pub max_qubits: usize,
    pub sampler: SamplerKind,
    pub params: SamplerParams,
    /// Independent repetitions for [`HybridConfig::run_seeds`].
    pub runs: usize,
}

impl HybridConfig {
    pub fn new(max_qubits: usize, sampler: SamplerKind, params: SamplerParams) -> Self {
        Self {
            max_qubits,
            sampler,
            params,
            runs: 20,
        }
    }

    /// Budget of `cities` residual cities, i.e. `cities²` qubits.
    pub fn for_cities(cities: usize, sampler: SamplerKind, params: SamplerParams) -> Self {
        Self::new(cities * cities, sampler, params)
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_qubits < 1 {
            return invalid("max_qubits must be at least 1");
        }
        if self.runs < 1 {
            return invalid("runs must be at least 1");
        }
        self.params.validate()
    }

    /// Seed of each run, derived from the configured seed.
    pub fn run_seeds(&self) -> Vec<u64> {
        (0..self.runs as u64).map(|r| derive_seed(self.params.seed, r)).collect()
    }

    pub fn build_sampler(&self) -> Box<dyn Sampler + Send + Sync> {
        self.sampler.build(self.params)
    }
}

/// One sampler submission.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CallRecord {
    /// Human-readable description of the residual problem.
    pub subproblem: String,
    pub num_bits: usize,
    /// Objective already fixed by the classical prefix.
    pub prefix_objective: f64,
    pub sampler_id: String,
    pub seed: u64,
    pub total_reads: u64,
    pub distinct: usize,
    pub min_energy: f64,
    pub feasible_reads: u64,
    /// Best complete objective (prefix included) among feasible reads.
    pub best_feasible_objective: Option<f64>,
}

impl CallRecord {
    pub(crate) fn new(subproblem: String, prefix_objective: f64, set: &SampleSet, num_bits: usize) -> Self {
        Self {
            subproblem,
            num_bits,
            prefix_objective,
            sampler_id: set.sampler_id.clone(),
            seed: set.seed,
            total_reads: set.total_reads,
            distinct: set.entries.len(),
            min_energy: set.min_energy().unwrap_or(f64::NAN),
            feasible_reads: 0,
            best_feasible_objective: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HybridTrace {
    pub classical_calls: u64,
    pub quantum_calls: u64,
    /// Best feasible solution found.
    pub best: BitSolution,
    /// Knapsack only: the candidate with the lowest reported energy, i.e.
    /// fixed prefix plus the lowest-energy read of a call, feasible or not.
    /// This is what an energy-driven selection without a feasibility filter
    /// would return.
    pub raw_best: Option<BitSolution>,
    /// Traveling salesman only: the best tour.
    pub tour: Option<Tour>,
    pub per_call_log: Vec<CallRecord>,
}

impl HybridTrace {
    pub fn objective(&self) -> f64 {
        self.best.objective
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }
}
