use crate::branch_bound::cardinality_bound;
use crate::derive_seed;
use crate::error::{Error, Result};
use crate::hybrid::{CallRecord, HybridConfig, HybridTrace};
use crate::problem::KpInstance;
use crate::qubo::{kp_qubo, slack_bits, Lambda};
use crate::samplers::Sampler;
use crate::{Bits, TOLERANCE};

/// Hybrid knapsack solve with the sampler chosen in `cfg`.
pub fn hybrid_kp(inst: &KpInstance, cfg: &HybridConfig, seed: u64) -> Result<HybridTrace> {
    cfg.validate()?;
    let sampler = cfg.build_sampler();
    hybrid_kp_with(inst, cfg.max_qubits, sampler.as_ref(), seed)
}

/// Hybrid knapsack solve against any sampler.
///
/// The search is the depth-first tree of [`crate::branch_bound::kp_bb`]. At
/// each node the residual problem is the set of undecided items that still
/// fit the residual capacity `W'`. A node with an empty residual is a leaf and
/// is evaluated classically. A residual that cannot beat the incumbent is
/// pruned. A residual of `N'` items whose QUBO needs
/// `N' + slack_bits(W') <= max_qubits` bits is submitted to the sampler.
/// Otherwise the node's own packing is offered to the incumbent and its
/// children are visited.
pub fn hybrid_kp_with(inst: &KpInstance, max_qubits: usize, sampler: &dyn Sampler, seed: u64) -> Result<HybridTrace> {
    let smallest = slack_bits(inst.capacity()) + 1;
    if max_qubits < smallest {
        return Err(Error::BudgetRefused(format!(
            "a knapsack with capacity {} needs a budget of at least {smallest} qubits, got {max_qubits}",
            inst.capacity()
        )));
    }
    let n = inst.len();
    let mut search = Search {
        inst,
        max_qubits,
        sampler,
        seed,
        packed: vec![0; n],
        incumbent: f64::INFINITY,
        best: vec![0; n],
        raw_energy: f64::INFINITY,
        raw_bits: None,
        classical_calls: 0,
        log: Vec::new(),
    };
    search.visit(0, inst.capacity(), 0.0)?;
    // With no feasible sample at all the empty packing is the incumbent.
    let best = inst.solution(search.best)?;
    let raw_best = match search.raw_bits {
        Some(bits) => Some(inst.solution(bits)?),
        None => None,
    };
    Ok(HybridTrace {
        classical_calls: search.classical_calls,
        quantum_calls: search.log.len() as u64,
        best,
        raw_best,
        tour: None,
        per_call_log: search.log,
    })
}

struct Search<'a> {
    inst: &'a KpInstance,
    max_qubits: usize,
    sampler: &'a dyn Sampler,
    seed: u64,
    packed: Bits,
    incumbent: f64,
    best: Bits,
    raw_energy: f64,
    raw_bits: Option<Bits>,
    classical_calls: u64,
    log: Vec<CallRecord>,
}

impl Search<'_> {
    fn visit(&mut self, next: usize, capacity: f64, z: f64) -> Result<()> {
        self.classical_calls += 1;
        let n = self.inst.len();
        let values = self.inst.values();
        let weights = self.inst.weights();
        let residual: Vec<usize> = (next..n).filter(|&k| weights[k] <= capacity + TOLERANCE).collect();
        if residual.is_empty() {
            self.offer_classical(z);
            return Ok(());
        }
        let items: Vec<(f64, f64)> = residual.iter().map(|&k| (values[k], weights[k])).collect();
        if cardinality_bound(z, &items, capacity) > self.incumbent - TOLERANCE {
            return Ok(());
        }
        if residual.len() + slack_bits(capacity) <= self.max_qubits {
            return self.submit(&residual, capacity, z);
        }
        self.offer_classical(z);
        for k in residual {
            self.packed[k] = 1;
            self.visit(k + 1, capacity - weights[k], z - values[k])?;
            self.packed[k] = 0;
        }
        Ok(())
    }

    fn offer_classical(&mut self, z: f64) {
        if z < self.raw_energy {
            self.raw_energy = z;
            self.raw_bits = Some(self.packed.clone());
        }
        if z < self.incumbent - TOLERANCE {
            self.incumbent = z;
            self.best.copy_from_slice(&self.packed);
            self.classical_calls += 1;
        }
    }

    fn assemble(&self, residual: &[usize], bits: &[u8]) -> Bits {
        let mut full = self.packed.clone();
        for (j, &k) in residual.iter().enumerate() {
            full[k] = bits[j];
        }
        full
    }

    fn submit(&mut self, residual: &[usize], capacity: f64, z: f64) -> Result<()> {
        let values = residual.iter().map(|&k| self.inst.values()[k]).collect();
        let weights = residual.iter().map(|&k| self.inst.weights()[k]).collect();
        let sub = KpInstance::new(values, weights, capacity)?;
        let q = kp_qubo(&sub, Lambda::Auto)?;
        let call_seed = derive_seed(self.seed, self.log.len() as u64);
        let set = self.sampler.sample(&q, call_seed)?;
        let mut record = CallRecord::new(
            format!("items {residual:?} capacity {capacity}"),
            z,
            &set,
            q.num_bits(),
        );
        if let Some(low) = set.lowest() {
            if z + low.energy < self.raw_energy {
                self.raw_energy = z + low.energy;
                self.raw_bits = Some(self.assemble(residual, &low.bits));
            }
        }
        let mut best_read: Option<(f64, &[u8])> = None;
        for s in &set.entries {
            let item_bits = &s.bits[..residual.len()];
            if !sub.is_feasible(item_bits)? {
                continue;
            }
            record.feasible_reads += s.occurrences;
            let obj = z + sub.objective(item_bits)?;
            if best_read.is_none_or(|(b, _)| obj < b) {
                best_read = Some((obj, item_bits));
            }
        }
        if let Some((obj, bits)) = best_read {
            record.best_feasible_objective = Some(obj);
            if obj < self.incumbent - TOLERANCE {
                self.incumbent = obj;
                self.best = self.assemble(residual, bits);
            }
        }
        self.log.push(record);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch_bound::{kp_bb, BbOptions};
    use crate::problem::{kp_toy, kp_toy_optimum};
    use crate::samplers::{SamplerKind, SamplerParams};

    fn exact(max_qubits: usize) -> HybridConfig {
        HybridConfig::new(max_qubits, SamplerKind::Exact, SamplerParams::default())
    }

    #[test]
    fn full_budget_is_one_call_each() {
        let t = hybrid_kp(&kp_toy(25, 10).unwrap(), &exact(29), 0).unwrap();
        assert_eq!((t.classical_calls, t.quantum_calls), (1, 1));
        assert_eq!(t.objective(), -205.0);
    }

    #[test]
    fn exact_sampler_matches_classical_optimum() {
        let inst = kp_toy(10, 4).unwrap();
        let t = hybrid_kp(&inst, &exact(7), 0).unwrap();
        assert_eq!(t.objective(), kp_bb(&inst, BbOptions::binary()).unwrap().objective().unwrap());
        assert!(t.per_call_log.iter().all(|c| c.num_bits <= 7));
        assert!(t.best.feasible);
    }

    #[test]
    fn every_budget_is_exact_on_small_toys() {
        for (n, w) in [(5, 2), (7, 3), (8, 3)] {
            let inst = kp_toy(n, w).unwrap();
            for m in slack_bits(w as f64) + 1..=n + slack_bits(w as f64) {
                let t = hybrid_kp(&inst, &exact(m), 1).unwrap();
                assert_eq!(t.objective(), kp_toy_optimum(n, w), "N={n} W={w} M={m}");
                assert_eq!(t.quantum_calls as usize, t.per_call_log.len());
            }
        }
    }

    #[test]
    fn random_single_draw_stays_feasible() {
        let inst = kp_toy(6, 2).unwrap();
        let params = SamplerParams {
            num_reads: 1,
            ..SamplerParams::default()
        };
        for seed in 0..30 {
            let t = hybrid_kp(&inst, &HybridConfig::new(20, SamplerKind::Random, params), seed).unwrap();
            assert!(t.best.feasible);
            assert!(t.best.objective <= 0.0);
            assert!(t.raw_best.is_some());
        }
    }

    #[test]
    fn refuses_too_small_budget() {
        let inst = kp_toy(25, 10).unwrap();
        assert!(matches!(hybrid_kp(&inst, &exact(4), 0), Err(Error::BudgetRefused(_))));
        assert!(hybrid_kp(&inst, &exact(5), 0).is_ok());
    }
}
