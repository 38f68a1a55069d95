use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::derive_seed;
use crate::error::{Error, Result};
use crate::hybrid::{CallRecord, HybridConfig, HybridTrace};
use crate::problem::{BitSolution, Tour, TspInstance};
use crate::qubo::{tsp_qubo, Lambda};
use crate::samplers::Sampler;
use crate::TOLERANCE;

/// Hybrid TSP solve with the sampler chosen in `cfg`; the residual city
/// budget is `floor(sqrt(max_qubits))`.
pub fn hybrid_tsp(inst: &TspInstance, cfg: &HybridConfig, seed: u64) -> Result<HybridTrace> {
    cfg.validate()?;
    let sampler = cfg.build_sampler();
    let cities = (cfg.max_qubits as f64).sqrt().floor() as usize;
    hybrid_tsp_with(inst, cities, sampler.as_ref(), seed)
}

/// Hybrid TSP solve against any sampler with a budget of `cities` residual
/// cities (`cities²` qubits).
///
/// Best-first search over paths from the depot, ordered by a lower bound:
/// path cost plus the cheapest admissible outgoing edge of the path end and
/// of every unvisited city. Once a path leaves at most `cities` cities to
/// route (its end plus the unvisited ones) the residual instance is encoded
/// and sampled; decoded reads that are not tours are discarded.
pub fn hybrid_tsp_with(inst: &TspInstance, cities: usize, sampler: &dyn Sampler, seed: u64) -> Result<HybridTrace> {
    let n = inst.num_cities();
    if cities < 3 {
        return Err(Error::BudgetRefused(format!(
            "the residual city budget must be at least 3, got {cities}"
        )));
    }
    let mut search = Search {
        inst,
        sampler,
        seed,
        incumbent: f64::INFINITY,
        best: None,
        classical_calls: 0,
        log: Vec::new(),
    };
    let mut frontier = BinaryHeap::new();
    let root = vec![0];
    frontier.push(Node {
        bound: search.lower_bound(&root, 0.0),
        cost: 0.0,
        path: root,
    });
    while let Some(node) = frontier.pop() {
        if node.bound > search.incumbent - TOLERANCE {
            continue;
        }
        search.classical_calls += 1;
        let remaining = n - node.path.len() + 1;
        if remaining <= cities {
            search.submit(&node)?;
            continue;
        }
        let end = *node.path.last().expect("paths start at the depot");
        for next in 1..n {
            if node.path.contains(&next) {
                continue;
            }
            let mut path = node.path.clone();
            path.push(next);
            let cost = node.cost + inst.cost(end, next);
            let bound = search.lower_bound(&path, cost);
            if bound <= search.incumbent - TOLERANCE {
                frontier.push(Node { bound, cost, path });
            }
        }
    }
    let (tour, cost) = search.best.ok_or_else(|| {
        Error::Numerical("the sampler returned no feasible tour for any residual problem".into())
    })?;
    Ok(HybridTrace {
        classical_calls: search.classical_calls,
        quantum_calls: search.log.len() as u64,
        best: BitSolution {
            bits: tour.position_bits(),
            objective: cost,
            feasible: true,
        },
        raw_best: None,
        tour: Some(tour),
        per_call_log: search.log,
    })
}

struct Node {
    bound: f64,
    cost: f64,
    path: Vec<usize>,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Reversed: the heap pops the smallest bound, then the smallest path.
impl Ord for Node {
    fn cmp(&self, other: &Self) -> Ordering {
        other.bound.total_cmp(&self.bound).then_with(|| other.path.cmp(&self.path))
    }
}

struct Search<'a> {
    inst: &'a TspInstance,
    sampler: &'a dyn Sampler,
    seed: u64,
    incumbent: f64,
    best: Option<(Tour, f64)>,
    classical_calls: u64,
    log: Vec<CallRecord>,
}

impl Search<'_> {
    fn lower_bound(&self, path: &[usize], cost: f64) -> f64 {
        let n = self.inst.num_cities();
        let end = *path.last().expect("non-empty path");
        let unvisited: Vec<usize> = (0..n).filter(|c| !path.contains(c)).collect();
        if unvisited.is_empty() {
            return cost + self.inst.cost(end, 0);
        }
        let cheapest = |from: usize, to_depot: bool| {
            unvisited
                .iter()
                .copied()
                .chain(to_depot.then_some(0))
                .filter(|&c| c != from)
                .map(|c| self.inst.cost(from, c))
                .fold(f64::INFINITY, f64::min)
        };
        cost + cheapest(end, false) + unvisited.iter().map(|&c| cheapest(c, true)).sum::<f64>()
    }

    fn submit(&mut self, node: &Node) -> Result<()> {
        let n = self.inst.num_cities();
        let end = *node.path.last().expect("non-empty path");
        // Local city 0 leaves from the path end and is re-entered at the depot.
        let mut local = vec![end];
        local.extend((1..n).filter(|c| !node.path.contains(c)));
        let m = local.len();
        let cost: Vec<Vec<f64>> = (0..m)
            .map(|a| {
                (0..m)
                    .map(|b| match (a, b) {
                        _ if a == b => 0.0,
                        (_, 0) => self.inst.cost(local[a], 0),
                        _ => self.inst.cost(local[a], local[b]),
                    })
                    .collect()
            })
            .collect();
        let sub = TspInstance::new(cost)?;
        let q = tsp_qubo(&sub, Lambda::Auto)?;
        let call_seed = derive_seed(self.seed, self.log.len() as u64);
        let set = self.sampler.sample(&q, call_seed)?;
        let mut record = CallRecord::new(format!("path {:?} cities {local:?}", node.path), node.cost, &set, q.num_bits());
        let mut best_read: Option<(f64, Tour)> = None;
        for s in &set.entries {
            let Some(t) = Tour::from_position_bits(&s.bits, m) else {
                continue;
            };
            record.feasible_reads += s.occurrences;
            let mut order = node.path.clone();
            order.extend(t.order()[1..].iter().map(|&a| local[a]));
            let tour = Tour::new(order)?;
            let total = self.inst.tour_cost(&tour)?;
            if best_read.as_ref().is_none_or(|(c, _)| total < *c) {
                best_read = Some((total, tour));
            }
        }
        if let Some((total, tour)) = best_read {
            record.best_feasible_objective = Some(total);
            if total < self.incumbent - TOLERANCE {
                self.incumbent = total;
                self.best = Some((tour, total));
            }
        }
        self.log.push(record);
        Ok(())
    }
}
