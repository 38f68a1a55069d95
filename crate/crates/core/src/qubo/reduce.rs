use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::problem::{BlopInstance, KpInstance, Sense, TspInstance};
use crate::qubo::{QuboBuilder, QuboModel};

/// Penalty weight selection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Lambda {
    /// Knapsack: `max v + 1`. TSP: `max C + 1`.
    #[default]
    Auto,
    Value(f64),
}

/// Number of binary slack bits that can represent every integer in `0..=b`.
pub fn slack_bits(b: f64) -> usize {
    let top = b.max(0.0).floor() as u64;
    (u64::BITS - top.leading_zeros()) as usize
}

/// Folds the constraints of a binary linear problem into squared penalties.
///
/// Each `<=` row `j` receives `slack_bits(b_j)` slack bits with coefficients
/// `1, 2, 4, ...` and becomes `λ_j (b_j - A_j x - Σ 2^k s_jk)^2`; equality
/// rows are penalized without slack. The objective term is `c·x` as stored
/// (minimization), so on a feasible assignment with matching slack the model
/// value equals the instance objective. Slack bits follow the `N` original
/// variables.
pub fn blop_to_qubo(inst: &BlopInstance, lambdas: &[f64]) -> Result<QuboModel> {
    let m = inst.num_constraints();
    if lambdas.len() != m {
        return Err(Error::Dimension {
            what: "Lagrange multipliers",
            expected: m,
            got: lambdas.len(),
        });
    }
    if let Some(l) = lambdas.iter().find(|l| !(l.is_finite() && **l > 0.0)) {
        return invalid(format!("penalty weight must be positive, got {l}"));
    }
    let n = inst.num_vars();
    let mut slack_counts = Vec::with_capacity(m);
    for (j, (&b, sense)) in inst.rhs().iter().zip(inst.senses()).enumerate() {
        match sense {
            Sense::Le if b < 0.0 => {
                return invalid(format!(
                    "row {j} has negative right-hand side {b}; slack bits cannot represent it"
                ))
            }
            Sense::Le => slack_counts.push(slack_bits(b)),
            Sense::Eq => slack_counts.push(0),
        }
    }
    let total = n + slack_counts.iter().sum::<usize>();
    let mut builder = QuboBuilder::new(total);
    for (i, &c) in inst.costs().iter().enumerate() {
        builder.add_linear(i, c);
    }
    let mut next_slack = n;
    for (j, row) in inst.rows().iter().enumerate() {
        let mut terms: Vec<(usize, f64)> = row
            .iter()
            .enumerate()
            .filter(|(_, &a)| a != 0.0)
            .map(|(i, &a)| (i, a))
            .collect();
        for k in 0..slack_counts[j] {
            builder.name(next_slack, format!("slack{j}_{k}"));
            terms.push((next_slack, (1u64 << k) as f64));
            next_slack += 1;
        }
        builder.add_penalty(lambdas[j], inst.rhs()[j], terms);
    }
    Ok(builder.build())
}

/// Knapsack QUBO `-Σ v_i x_i + λ (W - Σ w_i x_i - Σ 2^k s_k)^2` over
/// `N + slack_bits(W)` bits.
pub fn kp_qubo(inst: &KpInstance, lambda: Lambda) -> Result<QuboModel> {
    let lambda = match lambda {
        Lambda::Auto => kp_auto_lambda(inst),
        Lambda::Value(l) => l,
    };
    let q = blop_to_qubo(&inst.to_blop(), &[lambda])?;
    let mut names = q.var_names().to_vec();
    for (i, name) in names.iter_mut().take(inst.len()).enumerate() {
        *name = format!("item{i}");
    }
    q.with_var_names(names)
}

pub(crate) fn kp_auto_lambda(inst: &KpInstance) -> f64 {
    inst.values().iter().copied().fold(f64::MIN, f64::max) + 1.0
}

/// Position-encoded TSP QUBO over `n^2` bits, bit `i*n + k` meaning city `i`
/// is visited at step `k`:
///
/// `Σ_{i≠j} C_ij Σ_k x_{i,k} x_{j,k+1} + λ Σ_i (1 - Σ_k x_{i,k})^2 + λ Σ_k (1 - Σ_i x_{i,k})^2`
///
/// with the step index taken modulo `n`. Requires `λ > max C`.
pub fn tsp_qubo(inst: &TspInstance, lambda: Lambda) -> Result<QuboModel> {
    let max_c = inst.max_cost();
    let lambda = match lambda {
        Lambda::Auto => max_c + 1.0,
        Lambda::Value(l) if l > max_c => l,
        Lambda::Value(l) => {
            return invalid(format!(
                "TSP penalty weight {l} must exceed the largest travel cost {max_c}"
            ))
        }
    };
    let n = inst.num_cities();
    let var = |city: usize, step: usize| city * n + step;
    let mut builder = QuboBuilder::new(n * n);
    for city in 0..n {
        for step in 0..n {
            builder.name(var(city, step), format!("x{city}_{step}"));
        }
    }
    for i in 0..n {
        for j in 0..n {
            let c = inst.cost(i, j);
            if i == j || c == 0.0 {
                continue;
            }
            for k in 0..n {
                builder.add_quadratic(var(i, k), var(j, (k + 1) % n), c);
            }
        }
    }
    for city in 0..n {
        builder.add_penalty(lambda, 1.0, (0..n).map(|k| (var(city, k), 1.0)).collect());
    }
    for step in 0..n {
        builder.add_penalty(lambda, 1.0, (0..n).map(|i| (var(i, step), 1.0)).collect());
    }
    Ok(builder.build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::{kp_toy, tsp_toy, Tour};

    fn all_bits(m: usize) -> impl Iterator<Item = Vec<u8>> {
        (0u64..(1 << m)).map(move |mask| (0..m).map(|i| ((mask >> i) & 1) as u8).collect())
    }

    fn minimizers(q: &QuboModel) -> (f64, Vec<Vec<u8>>) {
        let mut best = f64::INFINITY;
        let mut arg = Vec::new();
        for bits in all_bits(q.num_bits()) {
            let e = q.eval(&bits).unwrap();
            if e < best - 1e-9 {
                best = e;
                arg = vec![bits];
            } else if (e - best).abs() <= 1e-9 {
                arg.push(bits);
            }
        }
        (best, arg)
    }

    #[test]
    fn slack_bit_counts() {
        assert_eq!(slack_bits(0.0), 0);
        assert_eq!(slack_bits(1.0), 1);
        assert_eq!(slack_bits(3.0), 2);
        assert_eq!(slack_bits(4.0), 3);
        assert_eq!(slack_bits(10.0), 4);
        assert_eq!(slack_bits(15.0), 4);
        assert_eq!(slack_bits(16.0), 5);
    }

    #[test]
    fn two_item_knapsack_minimizer() {
        let inst = KpInstance::new(vec![1.0, 2.0], vec![1.0, 1.0], 1.0).unwrap();
        let q = kp_qubo(&inst, Lambda::Value(3.0)).unwrap();
        assert_eq!(q.num_bits(), 3);
        let (e, arg) = minimizers(&q);
        assert_eq!(e, -2.0);
        assert_eq!(arg, vec![vec![0, 1, 0]]);
    }

    #[test]
    fn toy_sizes_and_auto_lambda() {
        let q = kp_qubo(&kp_toy(25, 10).unwrap(), Lambda::Auto).unwrap();
        assert_eq!(q.num_bits(), 29);
        assert_eq!(q.penalties()[0].weight, 26.0);
        let q = kp_qubo(&kp_toy(10, 10).unwrap(), Lambda::Auto).unwrap();
        assert_eq!(q.num_bits(), 14);
        assert_eq!(q.penalties()[0].weight, 11.0);
    }

    #[test]
    fn single_item() {
        let inst = KpInstance::new(vec![1.0], vec![1.0], 1.0).unwrap();
        let (e, arg) = minimizers(&kp_qubo(&inst, Lambda::Auto).unwrap());
        assert_eq!(e, -1.0);
        assert_eq!(arg, vec![vec![1, 0]]);
    }

    #[test]
    fn unconstrained_problem_has_no_quadratic_terms() {
        let inst = BlopInstance::with_le(vec![2.0, -1.0, 0.5], vec![], vec![]).unwrap();
        let q = blop_to_qubo(&inst, &[]).unwrap();
        assert!(q.quadratic().is_empty());
        for bits in all_bits(3) {
            assert_eq!(q.eval(&bits).unwrap(), inst.objective(&bits).unwrap());
        }
    }

    #[test]
    fn saturated_feasible_assignment_has_zero_penalty() {
        let inst = kp_toy(6, 3).unwrap();
        let q = kp_qubo(&inst, Lambda::Auto).unwrap();
        // last three items, slack 0
        let bits = vec![0, 0, 0, 1, 1, 1, 0, 0];
        assert_eq!(q.eval(&bits).unwrap(), inst.objective(&bits[..6]).unwrap());
    }

    #[test]
    fn qubo_equals_objective_plus_penalties() {
        let inst = BlopInstance::new(
            vec![-1.0, 2.0, -3.0],
            vec![vec![1.0, 2.0, 1.0], vec![1.0, 0.0, 1.0]],
            vec![3.0, 1.0],
            vec![Sense::Le, Sense::Eq],
        )
        .unwrap();
        let q = blop_to_qubo(&inst, &[2.0, 5.0]).unwrap();
        assert_eq!(q.num_bits(), 3 + 2);
        for bits in all_bits(5) {
            let x = &bits[..3];
            let slack = bits[3] as f64 + 2.0 * bits[4] as f64;
            let r0 = 3.0 - (x[0] as f64 + 2.0 * x[1] as f64 + x[2] as f64) - slack;
            let r1 = 1.0 - (x[0] as f64 + x[2] as f64);
            let expected = inst.objective(x).unwrap() + 2.0 * r0 * r0 + 5.0 * r1 * r1;
            assert!((q.eval(&bits).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_multipliers_and_rhs() {
        let inst = BlopInstance::with_le(vec![1.0], vec![vec![1.0]], vec![1.0]).unwrap();
        assert!(blop_to_qubo(&inst, &[0.0]).is_err());
        assert!(blop_to_qubo(&inst, &[-1.0]).is_err());
        assert!(blop_to_qubo(&inst, &[]).is_err());
        let neg = BlopInstance::with_le(vec![1.0], vec![vec![1.0]], vec![-1.0]).unwrap();
        assert!(blop_to_qubo(&neg, &[1.0]).is_err());
    }

    #[test]
    fn small_lambda_breaks_capacity() {
        let inst = kp_toy(4, 2).unwrap();
        let q = kp_qubo(&inst, Lambda::Value(0.1)).unwrap();
        let (_, arg) = minimizers(&q);
        assert!(arg.iter().all(|b| !inst.is_feasible(&b[..4]).unwrap()));
    }

    #[test]
    fn tsp_three_minimizers_are_rotations() {
        let inst = tsp_toy(3).unwrap();
        let q = tsp_qubo(&inst, Lambda::Auto).unwrap();
        let (e, arg) = minimizers(&q);
        assert_eq!(e, 3.0);
        assert_eq!(arg.len(), 3);
        for bits in &arg {
            assert_eq!(Tour::from_position_bits(bits, 3).unwrap().order(), &[0, 1, 2]);
        }
    }

    #[test]
    fn tsp_uniform_costs_six_minimizers() {
        let k = 2.0;
        let cost = (0..3).map(|i| (0..3).map(|j| if i == j { 0.0 } else { k }).collect()).collect();
        let q = tsp_qubo(&TspInstance::new(cost).unwrap(), Lambda::Auto).unwrap();
        let (e, arg) = minimizers(&q);
        assert_eq!(e, 3.0 * k);
        assert_eq!(arg.len(), 6);
    }

    #[test]
    fn tsp_valid_tours_pay_no_penalty() {
        let inst = tsp_toy(4).unwrap();
        let q = tsp_qubo(&inst, Lambda::Auto).unwrap();
        for order in [[0, 1, 2, 3], [0, 3, 1, 2], [0, 2, 3, 1]] {
            let t = Tour::new(order.to_vec()).unwrap();
            assert_eq!(q.eval(&t.position_bits()).unwrap(), inst.tour_cost(&t).unwrap());
            assert!(q.penalties().iter().all(|p| p.value(&t.position_bits()) == 0.0));
        }
    }

    #[test]
    fn tsp_lambda_must_exceed_max_cost() {
        let inst = tsp_toy(4).unwrap();
        assert!(tsp_qubo(&inst, Lambda::Value(3.0)).is_err());
        assert!(tsp_qubo(&inst, Lambda::Value(3.5)).is_ok());
    }
}
