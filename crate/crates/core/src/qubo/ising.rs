use std::collections::BTreeMap;

use crate::error::{invalid, Error, Result};
use crate::qubo::{ModelFile, QuboModel};

/// `H(s) = offset + Σ h_i s_i + Σ_{i<j} J_ij s_i s_j` with `s_i ∈ {-1/2, +1/2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    h: Vec<f64>,
    j: BTreeMap<(usize, usize), f64>,
    offset: f64,
}

impl IsingModel {
    pub fn new(h: Vec<f64>, couplings: Vec<(usize, usize, f64)>, offset: f64) -> Result<Self> {
        let n = h.len();
        let mut j = BTreeMap::new();
        for (a, b, v) in couplings {
            if a >= b || b >= n {
                return invalid(format!("coupling ({a},{b}) must satisfy a < b < {n}"));
            }
            if j.insert((a, b), v).is_some() {
                return invalid(format!("duplicate coupling ({a},{b})"));
            }
        }
        Ok(Self { h, j, offset })
    }

    pub fn num_spins(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &[f64] {
        &self.h
    }

    pub fn couplings(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.j
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Energy of a spin configuration; every spin must be `±0.5`.
    pub fn eval(&self, spins: &[f64]) -> Result<f64> {
        if spins.len() != self.num_spins() {
            return Err(Error::Dimension {
                what: "spin vector",
                expected: self.num_spins(),
                got: spins.len(),
            });
        }
        if let Some(s) = spins.iter().find(|s| s.abs() != 0.5) {
            return invalid(format!("spin value {s} is not ±1/2"));
        }
        Ok(self.energy(spins))
    }

    pub(crate) fn energy(&self, spins: &[f64]) -> f64 {
        let mut e = self.offset;
        for (h, s) in self.h.iter().zip(spins) {
            e += h * s;
        }
        for (&(a, b), v) in &self.j {
            e += v * spins[a] * spins[b];
        }
        e
    }

    /// Energy of the spin image of a bit vector.
    pub fn eval_bits(&self, bits: &[u8]) -> Result<f64> {
        crate::check_bits(bits, self.num_spins())?;
        Ok(self.energy(&bits_to_spins(bits)))
    }

    pub fn to_file(&self) -> ModelFile {
        ModelFile::Ising {
            num_spins: self.num_spins(),
            h: self.h.clone(),
            j: self.j.iter().map(|(&(a, b), &v)| (a, b, v)).collect(),
            offset: self.offset,
        }
    }
}

/// `s = (2x - 1) / 2`.
pub fn bits_to_spins(bits: &[u8]) -> Vec<f64> {
    bits.iter().map(|&b| (2.0 * b as f64 - 1.0) / 2.0).collect()
}

/// Rewrites a QUBO in spin variables. Substituting `x = s + 1/2` gives
/// `h_i = l_i + ½ Σ_{j≠i} q_ij`, `J_ij = q_ij`, and the constant
/// `offset + ½ Σ l_i + ¼ Σ q_ij`, so `Q(x) = H(s(x))` exactly.
pub fn qubo_to_ising(q: &QuboModel) -> IsingModel {
    let mut h = q.linear().to_vec();
    let mut offset = q.offset() + 0.5 * q.linear().iter().sum::<f64>();
    let mut j = BTreeMap::new();
    for (&(a, b), &v) in q.quadratic() {
        h[a] += 0.5 * v;
        h[b] += 0.5 * v;
        offset += 0.25 * v;
        j.insert((a, b), v);
    }
    IsingModel { h, j, offset }
}
