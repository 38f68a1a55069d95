//! Library results against independent enumeration.

use hbb_core::branch_bound::{tsp_bb, BbOptions};
use hbb_core::hybrid::{hybrid_kp, hybrid_tsp, HybridConfig};
use hbb_core::problem::{kp_toy, kp_toy_optimum, tsp_toy, Tour, TspInstance};
use hbb_core::qubo::{kp_qubo, tsp_qubo, Lambda};
use hbb_core::samplers::{sample_exact, sample_exact_bb, SamplerKind, SamplerParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn brute_tour(cost: &[Vec<f64>]) -> f64 {
    let n = cost.len();
    permutations(n - 1)
        .into_iter()
        .map(|p| {
            let tour: Vec<usize> = std::iter::once(0).chain(p.into_iter().map(|c| c + 1)).collect();
            (0..n).map(|k| cost[tour[k]][tour[(k + 1) % n]]).sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

#[test]
fn toy_knapsack_optimum_closed_form() {
    for n in 1..=14 {
        for w in 1..=n {
            let inst = kp_toy(n, w).unwrap();
            let exact = sample_exact(&kp_qubo(&inst, Lambda::Auto).unwrap()).unwrap();
            let bits = &exact.lowest().unwrap().bits[..n];
            assert_eq!(inst.objective(bits).unwrap(), kp_toy_optimum(n, w), "kp_toy({n},{w})");
        }
    }
}

#[test]
fn tsp_solvers_match_enumeration_on_asymmetric_costs() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..25 {
        let n = rng.gen_range(3..=6);
        let cost: Vec<Vec<f64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 0.0 } else { rng.gen_range(1..=9) as f64 }).collect())
            .collect();
        let inst = TspInstance::new(cost.clone()).unwrap();
        let opt = brute_tour(&cost);
        assert_eq!(tsp_bb(&inst, BbOptions::tsp()).unwrap().cost, opt);
        for cities in 3..=n {
            let cfg = HybridConfig::for_cities(cities, SamplerKind::Exact, SamplerParams::default());
            let trace = hybrid_tsp(&inst, &cfg, 1).unwrap();
            assert_eq!(inst.tour_cost(trace.tour.as_ref().unwrap()).unwrap(), opt);
        }
    }
}

#[test]
fn tsp_qubo_ground_states_are_rotations_of_the_optimum() {
    for n in 3..=4 {
        let inst = tsp_toy(n).unwrap();
        let set = sample_exact(&tsp_qubo(&inst, Lambda::Auto).unwrap()).unwrap();
        assert_eq!(set.entries.len(), n);
        for e in &set.entries {
            let tour = Tour::from_position_bits(&e.bits, n).unwrap();
            assert_eq!(inst.tour_cost(&tour).unwrap(), n as f64);
            assert_eq!(e.energy, n as f64);
        }
    }
}

#[test]
fn penalty_search_agrees_with_enumeration_on_knapsack_qubos() {
    for (n, w) in [(6, 3), (9, 5), (12, 7)] {
        let q = kp_qubo(&kp_toy(n, w).unwrap(), Lambda::Auto).unwrap();
        assert_eq!(sample_exact(&q).unwrap().entries, sample_exact_bb(&q).unwrap().entries);
    }
}

#[test]
fn random_sampler_hybrid_stays_feasible() {
    let inst = kp_toy(10, 5).unwrap();
    let params = SamplerParams { num_reads: 5, ..SamplerParams::default() };
    for m in 4..=14 {
        let trace = hybrid_kp(&inst, &HybridConfig::new(m, SamplerKind::Random, params), m as u64).unwrap();
        assert!(inst.is_feasible(&trace.best.bits).unwrap());
        assert!(trace.objective() >= kp_toy_optimum(10, 5));
    }
}
