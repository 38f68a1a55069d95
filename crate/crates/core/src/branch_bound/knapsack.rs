use num_bigint::BigUint;

use crate::branch_bound::{BbOptions, BbResult, SearchStats};
use crate::error::{invalid, Error, Result};
use crate::problem::KpInstance;
use crate::TOLERANCE;

/// Depth-first knapsack branch-and-bound.
///
/// A node packs a set of items and carries the index of the first item still
/// undecided. Its k-th branch packs item k, drops the undecided items before
/// k, and leaves a residual knapsack of capacity `W - w_k`. Branches whose
/// item does not fit are never created. Every node is itself a feasible
/// packing and is offered to the incumbent.
pub fn kp_bb(inst: &KpInstance, opts: BbOptions) -> Result<BbResult> {
    let n = inst.len();
    if n > opts.max_size {
        return Err(Error::BudgetRefused(format!(
            "knapsack branch-and-bound is capped at {} items, instance has {n}",
            opts.max_size
        )));
    }
    let mut search = KpSearch {
        inst,
        prune: opts.prune,
        packed: vec![0; n],
        incumbent: f64::INFINITY,
        best: vec![0; n],
        stats: SearchStats::default(),
        trace: Vec::new(),
    };
    search.visit(0, inst.capacity(), 0.0);
    let best = inst.solution(search.best)?;
    Ok(BbResult {
        best: Some(best),
        stats: search.stats,
        proven_optimal: true,
        incumbent_trace: search.trace,
    })
}

struct KpSearch<'a> {
    inst: &'a KpInstance,
    prune: bool,
    packed: Vec<u8>,
    incumbent: f64,
    best: Vec<u8>,
    stats: SearchStats,
    trace: Vec<f64>,
}

impl KpSearch<'_> {
    fn visit(&mut self, next: usize, capacity: f64, z: f64) {
        self.stats.branch_events += 1;
        if capacity.abs() <= TOLERANCE {
            self.stats.saturated_nodes += 1;
        }
        if z < self.incumbent - TOLERANCE {
            self.incumbent = z;
            self.best.copy_from_slice(&self.packed);
            self.stats.bound_updates += 1;
            self.trace.push(z);
        }
        let n = self.inst.len();
        let weights = self.inst.weights();
        let values = self.inst.values();
        let fitting: Vec<usize> = (next..n).filter(|&k| weights[k] <= capacity + TOLERANCE).collect();
        self.stats.pruned_infeasible += (n - next - fitting.len()) as u64;
        if fitting.is_empty() {
            return;
        }
        if self.prune {
            let items: Vec<(f64, f64)> = fitting.iter().map(|&k| (values[k], weights[k])).collect();
            if cardinality_bound(z, &items, capacity) > self.incumbent - TOLERANCE {
                self.stats.pruned_by_bound += 1;
                return;
            }
        }
        for k in fitting {
            self.stats.children_generated += 1;
            self.packed[k] = 1;
            self.visit(k + 1, capacity - weights[k], z - values[k]);
            self.packed[k] = 0;
        }
    }
}

/// Lower bound on `z - Σ v` over packings drawn from `items` (value, weight)
/// that fit `capacity`: at most `k` items fit, where `k` is the largest count
/// whose `k` lightest weights fit, and they are worth at most the `k` largest
/// values. Only meaningful for strictly improving packings (at least one item).
pub(crate) fn cardinality_bound(z: f64, items: &[(f64, f64)], capacity: f64) -> f64 {
    let mut weights: Vec<f64> = items.iter().map(|&(_, w)| w).collect();
    weights.sort_by(f64::total_cmp);
    let mut load = 0.0;
    let mut count = 0;
    for w in weights {
        if load + w > capacity + TOLERANCE {
            break;
        }
        load += w;
        count += 1;
    }
    let mut values: Vec<f64> = items.iter().map(|&(v, _)| v).collect();
    values.sort_by(|a, b| b.total_cmp(a));
    z - values.iter().take(count).sum::<f64>()
}

/// Branches explored by unpruned knapsack search on the toy family:
/// `Σ_{k=1..W} C(N, k)`.
pub fn kp_bb_branch_count(n: usize, w_cap: usize) -> Result<BigUint> {
    if w_cap < 1 || w_cap > n {
        return invalid(format!("branch count needs 1 <= W <= N, got N={n}, W={w_cap}"));
    }
    let mut total = BigUint::from(0u32);
    let mut binom = BigUint::from(1u32);
    for k in 1..=w_cap {
        binom = binom * BigUint::from(n - k + 1) / BigUint::from(k);
        total += &binom;
    }
    Ok(total)
}
