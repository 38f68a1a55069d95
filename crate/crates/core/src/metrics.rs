//! Solution-quality figures of merit.
//!
//! Objectives follow the minimization convention used throughout the crate,
//! so knapsack optima are negative. [`delta_v`] is the literal normalized
//! difference and is therefore non-positive for feasible suboptimal packings;
//! reports carry its absolute value as well.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::samplers::SampleSet;
use crate::TOLERANCE;

/// `(z_a - z_opt) / z_opt`.
pub fn delta_v(z_a: f64, z_opt: f64) -> Result<f64> {
    if z_opt == 0.0 {
        return invalid("normalized value distance is undefined for a zero optimum");
    }
    Ok((z_a - z_opt) / z_opt)
}

/// Packed weight over capacity; above 1 means the capacity is violated.
pub fn w_tilde(weight: f64, capacity: f64) -> Result<f64> {
    if capacity <= 0.0 {
        return invalid(format!("capacity must be positive, got {capacity}"));
    }
    Ok(weight / capacity)
}

pub fn hamming(a: &[u8], b: &[u8]) -> Result<usize> {
    if a.len() != b.len() {
        return Err(Error::Dimension {
            what: "hamming operand",
            expected: a.len(),
            got: b.len(),
        });
    }
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count())
}

/// Tour cost over optimal tour cost.
pub fn c_tilde(z_a: f64, z_opt: f64) -> Result<f64> {
    if z_opt <= 0.0 {
        return invalid(format!("optimal tour cost must be positive, got {z_opt}"));
    }
    Ok(z_a / z_opt)
}

/// Fraction of reads whose energy is within `TOLERANCE` of `ground_energy`.
pub fn p0_estimate(samples: &SampleSet, ground_energy: f64) -> Result<f64> {
    if samples.total_reads == 0 {
        return invalid("ground-state frequency needs at least one read");
    }
    let hits: u64 = samples
        .entries
        .iter()
        .filter(|s| (s.energy - ground_energy).abs() <= TOLERANCE)
        .map(|s| s.occurrences)
        .sum();
    Ok(hits as f64 / samples.total_reads as f64)
}

/// Mean and population variance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub variance: f64,
}

impl Stat {
    /// Standard error of the mean, using the population variance.
    pub fn std_error(&self, n: usize) -> f64 {
        (self.variance / n as f64).sqrt()
    }
}

/// Mean and population variance (divisor `n`) of `values`.
pub fn aggregate(values: &[f64]) -> Result<Stat> {
    if values.is_empty() {
        return invalid("cannot aggregate an empty list");
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let variance = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    Ok(Stat { mean, variance })
}

/// Metrics of one run. Knapsack runs fill the value, weight and Hamming
/// fields; traveling salesman runs fill `c_tilde`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub delta_v: Option<f64>,
    pub w_tilde: Option<f64>,
    pub hamming: Option<usize>,
    pub c_tilde: Option<f64>,
    pub p0: Option<f64>,
}

/// Per-metric mean and variance over runs. A metric is present only when
/// every run reported it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub runs: usize,
    pub delta_v: Option<Stat>,
    pub abs_delta_v: Option<Stat>,
    pub w_tilde: Option<Stat>,
    pub hamming: Option<Stat>,
    pub c_tilde: Option<Stat>,
    pub p0: Option<Stat>,
}

impl MetricReport {
    pub fn from_runs(runs: &[RunMetrics]) -> Result<Self> {
        if runs.is_empty() {
            return invalid("metric report needs at least one run");
        }
        fn collect(runs: &[RunMetrics], f: impl Fn(&RunMetrics) -> Option<f64>) -> Option<Stat> {
            let values: Option<Vec<f64>> = runs.iter().map(f).collect();
            values.map(|v| aggregate(&v).expect("non-empty"))
        }
        Ok(Self {
            runs: runs.len(),
            delta_v: collect(runs, |r| r.delta_v),
            abs_delta_v: collect(runs, |r| r.delta_v.map(f64::abs)),
            w_tilde: collect(runs, |r| r.w_tilde),
            hamming: collect(runs, |r| r.hamming.map(|h| h as f64)),
            c_tilde: collect(runs, |r| r.c_tilde),
            p0: collect(runs, |r| r.p0),
        })
    }
}
