use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::qubo::QuboModel;
use crate::{Bits, TOLERANCE};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub bits: Bits,
    pub energy: f64,
    pub occurrences: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub entries: Vec<Sample>,
    pub total_reads: u64,
    pub sampler_id: String,
    pub seed: u64,
}

impl SampleSet {
    /// Aggregates raw reads, evaluating each distinct string exactly.
    pub fn from_reads(q: &QuboModel, reads: Vec<Bits>, sampler_id: &str, seed: u64) -> Self {
        let total_reads = reads.len() as u64;
        let mut counts: BTreeMap<Bits, u64> = BTreeMap::new();
        for r in reads {
            *counts.entry(r).or_insert(0) += 1;
        }
        let entries = counts
            .into_iter()
            .map(|(bits, occurrences)| Sample {
                energy: q.energy(&bits),
                bits,
                occurrences,
            })
            .collect();
        Self::from_entries(entries, total_reads, sampler_id, seed)
    }

    pub(crate) fn from_entries(mut entries: Vec<Sample>, total_reads: u64, sampler_id: &str, seed: u64) -> Self {
        entries.sort_by(|a, b| a.energy.total_cmp(&b.energy).then_with(|| a.bits.cmp(&b.bits)));
        Self {
            entries,
            total_reads,
            sampler_id: sampler_id.to_string(),
            seed,
        }
    }

    pub fn lowest(&self) -> Option<&Sample> {
        self.entries.first()
    }

    pub fn min_energy(&self) -> Option<f64> {
        self.lowest().map(|s| s.energy)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reads (counting multiplicity) whose energy is within tolerance of `energy`.
    pub fn reads_at(&self, energy: f64) -> u64 {
        self.entries
            .iter()
            .filter(|s| (s.energy - energy).abs() <= TOLERANCE)
            .map(|s| s.occurrences)
            .sum()
    }

    /// Writes `bits,energy,occurrences` rows; bits are printed as a 0/1 string.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["bits", "energy", "occurrences"])?;
        for s in &self.entries {
            let bits: String = s.bits.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
            out.write_record([bits, s.energy.to_string(), s.occurrences.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sample sets always serialize")
    }
}
