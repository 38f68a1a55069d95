use crate::branch_bound::{BbOptions, BbResult, SearchStats};
use crate::error::{Error, Result};
use crate::problem::{BlopInstance, Sense};
use crate::TOLERANCE;

/// Exact minimization of a binary linear problem by plain branch-and-bound.
///
/// The lower bound of a node is the cost of its fixed variables plus every
/// negative cost coefficient among the free ones. A node is infeasible once
/// some row cannot be satisfied by any completion.
pub fn bb_generic(inst: &BlopInstance, opts: BbOptions) -> Result<BbResult> {
    let n = inst.num_vars();
    if n > opts.max_size {
        return Err(Error::BudgetRefused(format!(
            "generic branch-and-bound is capped at {} variables, instance has {n}",
            opts.max_size
        )));
    }
    let m = inst.num_constraints();
    let mut neg_cost_suffix = vec![0.0; n + 1];
    for i in (0..n).rev() {
        neg_cost_suffix[i] = neg_cost_suffix[i + 1] + inst.costs()[i].min(0.0);
    }
    // Per-row extreme contributions of the free suffix.
    let mut row_min_suffix = vec![vec![0.0; n + 1]; m];
    let mut row_max_suffix = vec![vec![0.0; n + 1]; m];
    for (j, row) in inst.rows().iter().enumerate() {
        for i in (0..n).rev() {
            row_min_suffix[j][i] = row_min_suffix[j][i + 1] + row[i].min(0.0);
            row_max_suffix[j][i] = row_max_suffix[j][i + 1] + row[i].max(0.0);
        }
    }
    let mut search = Search {
        inst,
        opts,
        neg_cost_suffix,
        row_min_suffix,
        row_max_suffix,
        bits: vec![0; n],
        lhs: vec![0.0; m],
        incumbent: f64::INFINITY,
        best: None,
        stats: SearchStats::default(),
        trace: Vec::new(),
    };
    search.visit(0, 0.0);
    let best = match search.best {
        Some(bits) => Some(inst.solution(bits)?),
        None => None,
    };
    Ok(BbResult {
        best,
        stats: search.stats,
        proven_optimal: true,
        incumbent_trace: search.trace,
    })
}

struct Search<'a> {
    inst: &'a BlopInstance,
    opts: BbOptions,
    neg_cost_suffix: Vec<f64>,
    row_min_suffix: Vec<Vec<f64>>,
    row_max_suffix: Vec<Vec<f64>>,
    bits: Vec<u8>,
    lhs: Vec<f64>,
    incumbent: f64,
    best: Option<Vec<u8>>,
    stats: SearchStats,
    trace: Vec<f64>,
}

impl Search<'_> {
    fn visit(&mut self, depth: usize, cost: f64) {
        self.stats.branch_events += 1;
        let n = self.bits.len();
        if depth == n {
            let feasible = self.opts.prune || self.rows_satisfiable(n);
            if feasible && cost < self.incumbent - TOLERANCE {
                self.incumbent = cost;
                self.best = Some(self.bits.clone());
                self.stats.bound_updates += 1;
                self.trace.push(cost);
            }
            return;
        }
        for value in [0u8, 1] {
            self.stats.children_generated += 1;
            self.bits[depth] = value;
            let child_cost = cost + if value == 1 { self.inst.costs()[depth] } else { 0.0 };
            if value == 1 {
                for (j, row) in self.inst.rows().iter().enumerate() {
                    self.lhs[j] += row[depth];
                }
            }
            if self.opts.prune && !self.rows_satisfiable(depth + 1) {
                self.stats.pruned_infeasible += 1;
            } else if self.opts.prune
                && child_cost + self.neg_cost_suffix[depth + 1] > self.incumbent - TOLERANCE
            {
                self.stats.pruned_by_bound += 1;
            } else {
                self.visit(depth + 1, child_cost);
            }
            if value == 1 {
                for (j, row) in self.inst.rows().iter().enumerate() {
                    self.lhs[j] -= row[depth];
                }
            }
        }
        self.bits[depth] = 0;
    }

    /// Can some completion of the first `fixed` variables satisfy every row?
    fn rows_satisfiable(&self, fixed: usize) -> bool {
        self.inst
            .rhs()
            .iter()
            .zip(self.inst.senses())
            .enumerate()
            .all(|(j, (&rhs, sense))| {
                let lo = self.lhs[j] + self.row_min_suffix[j][fixed];
                let hi = self.lhs[j] + self.row_max_suffix[j][fixed];
                match sense {
                    Sense::Le => lo <= rhs + TOLERANCE,
                    Sense::Eq => lo <= rhs + TOLERANCE && hi >= rhs - TOLERANCE,
                }
            })
    }
}
