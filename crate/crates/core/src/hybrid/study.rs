use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::branch_bound::{kp_bb, BbOptions};
use crate::error::{invalid, Result};
use crate::hybrid::{hybrid_kp, hybrid_tsp, HybridConfig};
use crate::problem::{KpInstance, TspInstance};

/// One budget of a call-count study. `classical_bb_calls` is the same count
/// for the purely classical search and does not depend on the budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CallCountRow {
    pub budget: usize,
    pub classical_calls: u64,
    pub quantum_calls: u64,
    pub best_objective: f64,
    pub classical_bb_calls: u64,
}

impl CallCountRow {
    pub fn write_csv<W: Write>(rows: &[CallCountRow], w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for row in rows {
            out.serialize(row)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Hybrid knapsack call counts for each qubit budget.
pub fn call_count_study(inst: &KpInstance, budgets: &[usize], cfg: &HybridConfig, seed: u64) -> Result<Vec<CallCountRow>> {
    if budgets.is_empty() {
        return invalid("call-count study needs at least one budget");
    }
    let classical = kp_bb(inst, BbOptions::binary())?;
    let classical_bb_calls = classical.stats.branch_events + classical.stats.bound_updates;
    budgets
        .iter()
        .map(|&budget| {
            let t = hybrid_kp(inst, &HybridConfig { max_qubits: budget, ..*cfg }, seed)?;
            Ok(CallCountRow {
                budget,
                classical_calls: t.classical_calls,
                quantum_calls: t.quantum_calls,
                best_objective: t.objective(),
                classical_bb_calls,
            })
        })
        .collect()
}

/// Hybrid TSP call counts for each residual city budget.
pub fn tsp_call_count_study(inst: &TspInstance, budgets: &[usize], cfg: &HybridConfig, seed: u64) -> Result<Vec<CallCountRow>> {
    if budgets.is_empty() {
        return invalid("call-count study needs at least one budget");
    }
    let classical = crate::branch_bound::tsp_bb(inst, BbOptions::tsp())?;
    let classical_bb_calls = classical.stats.branch_events + classical.stats.bound_updates;
    budgets
        .iter()
        .map(|&cities| {
            let t = hybrid_tsp(inst, &HybridConfig { max_qubits: cities * cities, ..*cfg }, seed)?;
            Ok(CallCountRow {
                budget: cities,
                classical_calls: t.classical_calls,
                quantum_calls: t.quantum_calls,
                best_objective: t.objective(),
                classical_bb_calls,
            })
        })
        .collect()
}
