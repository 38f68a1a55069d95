//! Exact classical solvers.
//!
//! * [`bb_generic`]: binary tree over a [`BlopInstance`](crate::problem::BlopInstance),
//!   one variable fixed per level, `x = 0` child first.
//! * [`kp_bb`]: depth-first knapsack search where the k-th branch packs item
//!   k and drops the items before it, leaving a smaller knapsack.
//! * [`tsp_bb`]: best-first search over partial paths from the depot.
//!
//! All solvers report [`SearchStats`]; the counters are part of the public
//! contract because call-count studies compare them.

mod generic;
mod knapsack;
mod tsp;

use serde::{Deserialize, Serialize};

use crate::problem::BitSolution;

pub use generic::bb_generic;
pub use knapsack::{kp_bb, kp_bb_branch_count};
pub(crate) use knapsack::cardinality_bound;
pub use tsp::{tsp_bb, TspBbResult};

/// Default variable cap for the binary solvers.
pub const DEFAULT_MAX_VARS: usize = 32;
/// Default city cap for [`tsp_bb`].
pub const DEFAULT_MAX_CITIES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SearchStats {
    /// Nodes taken from the tree or frontier and processed.
    pub branch_events: u64,
    /// Child nodes created by branching (the root is not counted).
    pub children_generated: u64,
    /// Strict improvements of the incumbent.
    pub bound_updates: u64,
    pub pruned_by_bound: u64,
    pub pruned_infeasible: u64,
    /// Knapsack nodes whose load equals the capacity.
    pub saturated_nodes: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BbOptions {
    /// Refuse instances above this many variables (cities for [`tsp_bb`]).
    pub max_size: usize,
    /// Bound and infeasibility pruning. Disabling it only changes the stats.
    pub prune: bool,
}

impl BbOptions {
    pub fn binary() -> Self {
        Self {
            max_size: DEFAULT_MAX_VARS,
            prune: true,
        }
    }

    pub fn tsp() -> Self {
        Self {
            max_size: DEFAULT_MAX_CITIES,
            prune: true,
        }
    }

    pub fn without_pruning(mut self) -> Self {
        self.prune = false;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BbResult {
    /// `None` when no feasible assignment exists.
    pub best: Option<BitSolution>,
    pub stats: SearchStats,
    pub proven_optimal: bool,
    /// Incumbent objective after each update, strictly decreasing.
    pub incumbent_trace: Vec<f64>,
}

impl BbResult {
    pub fn is_infeasible(&self) -> bool {
        self.best.is_none()
    }

    pub fn objective(&self) -> Option<f64> {
        self.best.as_ref().map(|b| b.objective)
    }
}
