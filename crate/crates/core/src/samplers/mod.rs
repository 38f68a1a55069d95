//! Samplers over [`QuboModel`]s.
//!
//! Every sampler returns a [`SampleSet`]: distinct bit strings with exact
//! energies and occurrence counts, sorted by ascending energy and then by bit
//! string. The hybrid solver only sees the [`Sampler`] trait, so a remote
//! hardware client can be slotted in next to the local implementations.

mod anneal;
mod exact;
mod random;
mod sample_set;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qubo::QuboModel;

pub use anneal::{geometric_betas, sample_sa};
pub use exact::{sample_exact, sample_exact_bb, EXACT_BB_MAX_BITS, EXACT_MAX_BITS};
pub use random::{random_draws, sample_random, sample_random_baseline, sample_random_tour_baseline};
pub use sample_set::{Sample, SampleSet};

/// Read counts, annealing sweeps and inverse-temperature range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplerParams {
    pub num_reads: u64,
    pub sweeps: usize,
    pub beta_initial: f64,
    pub beta_final: f64,
    pub seed: u64,
}

impl Default for SamplerParams {
    fn default() -> Self {
        Self {
            num_reads: 1000,
            sweeps: 1000,
            beta_initial: 0.1,
            beta_final: 10.0,
            seed: 0,
        }
    }
}

impl SamplerParams {
    pub fn validate(&self) -> Result<()> {
        if self.num_reads < 1 {
            return crate::error::invalid("num_reads must be at least 1");
        }
        if self.sweeps < 1 {
            return crate::error::invalid("sweeps must be at least 1");
        }
        if !(self.beta_initial > 0.0 && self.beta_final >= self.beta_initial && self.beta_final.is_finite()) {
            return crate::error::invalid(format!(
                "need 0 < beta_initial <= beta_final, got {} and {}",
                self.beta_initial, self.beta_final
            ));
        }
        Ok(())
    }
}

/// Anything that turns a QUBO into a multiset of reads.
pub trait Sampler {
    fn id(&self) -> &str;

    fn sample(&self, q: &QuboModel, seed: u64) -> Result<SampleSet>;
}

/// Which local sampler to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum SamplerKind {
    /// All global minimizers: enumeration, or branch-and-bound when the
    /// model carries its penalty structure.
    Exact,
    /// Simulated annealing.
    #[default]
    Sa,
    /// Uniform random bit strings.
    Random,
}

impl std::str::FromStr for SamplerKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Self::Exact),
            "sa" => Ok(Self::Sa),
            "random" => Ok(Self::Random),
            other => crate::error::invalid(format!("unknown sampler {other:?} (expected exact, sa or random)")),
        }
    }
}

impl SamplerKind {
    pub fn build(self, params: SamplerParams) -> Box<dyn Sampler + Send + Sync> {
        match self {
            SamplerKind::Exact => Box::new(ExactSampler),
            SamplerKind::Sa => Box::new(SaSampler(params)),
            SamplerKind::Random => Box::new(RandomSampler(params.num_reads)),
        }
    }
}

/// Exact ground-state sampler. Uses branch-and-bound when the model records
/// its penalties (any size up to [`EXACT_BB_MAX_BITS`]) and plain enumeration
/// otherwise (up to [`EXACT_MAX_BITS`]).
#[derive(Debug, Clone, Copy, Default)]
pub struct ExactSampler;

impl Sampler for ExactSampler {
    fn id(&self) -> &str {
        "exact"
    }

    fn sample(&self, q: &QuboModel, _seed: u64) -> Result<SampleSet> {
        if q.penalties().is_empty() {
            sample_exact(q)
        } else {
            sample_exact_bb(q)
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SaSampler(pub SamplerParams);

impl Sampler for SaSampler {
    fn id(&self) -> &str {
        "sa"
    }

    fn sample(&self, q: &QuboModel, seed: u64) -> Result<SampleSet> {
        sample_sa(q, &SamplerParams { seed, ..self.0 })
    }
}

/// Uniform random reads; the best read plays the role of the champion.
#[derive(Debug, Clone, Copy)]
pub struct RandomSampler(pub u64);

impl Sampler for RandomSampler {
    fn id(&self) -> &str {
        "random"
    }

    fn sample(&self, q: &QuboModel, seed: u64) -> Result<SampleSet> {
        sample_random(q, self.0, seed)
    }
}
