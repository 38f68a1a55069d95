use crate::error::{invalid, Error, Result};
use crate::problem::blop::{dot, BitSolution, BlopInstance};
use crate::{check_bits, Bits, TOLERANCE};

/// 0/1 knapsack, stored in the minimization form `z = -v·x`.
#[derive(Debug, Clone, PartialEq)]
pub struct KpInstance {
    values: Vec<f64>,
    weights: Vec<f64>,
    capacity: f64,
}

impl KpInstance {
    pub fn new(values: Vec<f64>, weights: Vec<f64>, capacity: f64) -> Result<Self> {
        if values.is_empty() {
            return invalid("knapsack needs at least one item");
        }
        if values.len() != weights.len() {
            return Err(Error::Dimension {
                what: "knapsack weights",
                expected: values.len(),
                got: weights.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
            return invalid(format!("knapsack value {i} must be positive, got {}", values[i]));
        }
        if let Some(i) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return invalid(format!("knapsack weight {i} must be positive, got {}", weights[i]));
        }
        if !(capacity.is_finite() && capacity >= 0.0) {
            return invalid(format!("knapsack capacity must be non-negative, got {capacity}"));
        }
        Ok(Self {
            values,
            weights,
            capacity,
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    /// `-v·x`.
    pub fn objective(&self, bits: &[u8]) -> Result<f64> {
        check_bits(bits, self.len())?;
        Ok(-dot(&self.values, bits))
    }

    pub fn weight(&self, bits: &[u8]) -> Result<f64> {
        check_bits(bits, self.len())?;
        Ok(dot(&self.weights, bits))
    }

    pub fn is_feasible(&self, bits: &[u8]) -> Result<bool> {
        Ok(self.weight(bits)? <= self.capacity + TOLERANCE)
    }

    pub fn solution(&self, bits: Bits) -> Result<BitSolution> {
        let objective = self.objective(&bits)?;
        let feasible = self.is_feasible(&bits)?;
        Ok(BitSolution {
            bits,
            objective,
            feasible,
        })
    }

    /// The equivalent single-row binary linear problem.
    pub fn to_blop(&self) -> BlopInstance {
        BlopInstance::with_le(
            self.values.iter().map(|v| -v).collect(),
            vec![self.weights.clone()],
            vec![self.capacity],
        )
        .expect("knapsack data is validated at construction")
    }
}

/// Items valued `1..=n`, unit weights, capacity `w_cap`.
pub fn kp_toy(n: usize, w_cap: usize) -> Result<KpInstance> {
    if w_cap == 0 {
        return invalid("toy knapsack capacity must be at least 1");
    }
    if n < w_cap {
        return invalid(format!(
            "toy knapsack needs n >= capacity (got n={n}, capacity={w_cap})"
        ));
    }
    KpInstance::new(
        (1..=n).map(|i| i as f64).collect(),
        vec![1.0; n],
        w_cap as f64,
    )
}

/// Closed-form optimum of [`kp_toy`]: the `W` most valuable items,
/// `z = -W (N + (1 - W)/2)`.
pub fn kp_toy_optimum(n: usize, w_cap: usize) -> f64 {
    let (n, w) = (n as f64, w_cap as f64);
    -w * (n + (1.0 - w) / 2.0)
}
