use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::branch_bound::{BbOptions, SearchStats};
use crate::error::{Error, Result};
use crate::problem::{Tour, TspInstance};
use crate::TOLERANCE;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TspBbResult {
    pub tour: Tour,
    pub cost: f64,
    pub stats: SearchStats,
    pub proven_optimal: bool,
    pub incumbent_trace: Vec<f64>,
}

/// Frontier entry: a path from the depot with its accumulated cost.
/// Completed tours already include the closing edge.
#[derive(Debug, Clone)]
pub(crate) struct PathNode {
    pub cost: f64,
    pub path: Vec<usize>,
    pub complete: bool,
}

impl PartialEq for PathNode {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for PathNode {}

impl PartialOrd for PathNode {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Reversed so that `BinaryHeap` pops the cheapest node, ties broken by the
// lexicographically smallest path.
impl Ord for PathNode {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.path.cmp(&self.path))
            .then_with(|| other.complete.cmp(&self.complete))
    }
}

/// Best-first TSP branch-and-bound.
///
/// Expanding a node appends one unvisited city; the frontier is ordered by
/// accumulated travel cost. A path whose cost reaches the incumbent is
/// pruned.
pub fn tsp_bb(inst: &TspInstance, opts: BbOptions) -> Result<TspBbResult> {
    let n = inst.num_cities();
    if n > opts.max_size {
        return Err(Error::BudgetRefused(format!(
            "TSP branch-and-bound is capped at {} cities, instance has {n}",
            opts.max_size
        )));
    }
    let mut stats = SearchStats::default();
    let mut trace = Vec::new();
    let mut incumbent = f64::INFINITY;
    let mut best: Option<Vec<usize>> = None;
    let mut frontier = BinaryHeap::new();
    frontier.push(PathNode {
        cost: 0.0,
        path: vec![0],
        complete: false,
    });
    while let Some(node) = frontier.pop() {
        if opts.prune && node.cost > incumbent - TOLERANCE {
            stats.pruned_by_bound += 1;
            continue;
        }
        stats.branch_events += 1;
        if node.complete {
            if node.cost < incumbent - TOLERANCE {
                incumbent = node.cost;
                best = Some(node.path);
                stats.bound_updates += 1;
                trace.push(incumbent);
            }
            continue;
        }
        let last = *node.path.last().expect("paths start at the depot");
        let mut visited = vec![false; n];
        for &c in &node.path {
            visited[c] = true;
        }
        for next in (0..n).filter(|&c| !visited[c]) {
            stats.children_generated += 1;
            let mut path = node.path.clone();
            path.push(next);
            let complete = path.len() == n;
            let mut cost = node.cost + inst.cost(last, next);
            if complete {
                cost += inst.cost(next, 0);
            }
            if opts.prune && cost > incumbent - TOLERANCE {
                stats.pruned_by_bound += 1;
                continue;
            }
            frontier.push(PathNode { cost, path, complete });
        }
    }
    let path = best.expect("every instance with n >= 3 has a tour");
    Ok(TspBbResult {
        tour: Tour::new(path)?,
        cost: incumbent,
        stats,
        proven_optimal: true,
        incumbent_trace: trace,
    })
}
