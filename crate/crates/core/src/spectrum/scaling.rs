use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::problem::kp_toy;
use crate::qubo::{kp_qubo, slack_bits, IsingModel, Lambda};
use crate::spectrum::{gap_scan, Schedule};

/// `min_gap ≈ prefactor · M^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub r_squared: f64,
}

/// Least-squares line through `(ln M, ln gap)`.
///
/// `r_squared` is 1 when the log-gaps have no spread, since a flat line then
/// explains them exactly.
pub fn fit_power_law(points: &[(f64, f64)]) -> Result<PowerLawFit> {
    if points.len() < 2 {
        return invalid("a power-law fit needs at least two sizes");
    }
    if points.iter().any(|&(m, g)| !(m > 0.0 && g > 0.0)) {
        return invalid("power-law fit needs positive sizes and gaps");
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return invalid("power-law fit needs at least two distinct sizes");
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual: f64 = xs.iter().zip(&ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let r_squared = if syy <= f64::EPSILON * n { 1.0 } else { 1.0 - residual / syy };
    Ok(PowerLawFit {
        exponent: slope,
        prefactor: intercept.exp(),
        r_squared,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapScaling {
    /// `(M, min_gap, argmin_s)` per size.
    pub rows: Vec<(usize, f64, f64)>,
    pub fit: PowerLawFit,
}

impl GapScaling {
    /// Columns `M, min_gap, argmin_s`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["M", "min_gap", "argmin_s"])?;
        for (m, g, s) in &self.rows {
            out.write_record([m.to_string(), g.to_string(), s.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Minimum gap of `family(M)` for every size, then a power-law fit.
pub fn gap_scaling_study(
    family: impl Fn(usize) -> Result<IsingModel>,
    sizes: &[usize],
    sched: &Schedule,
    grid_points: usize,
) -> Result<GapScaling> {
    if sizes.len() < 2 {
        return invalid("a gap-scaling study needs at least two sizes");
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let model = family(size)?;
        let scan = gap_scan(&model, sched, grid_points)?;
        if scan.min_gap <= 0.0 {
            return Err(Error::Numerical(format!(
                "closed gap at size {size}, s = {}",
                scan.argmin_s
            )));
        }
        rows.push((size, scan.min_gap, scan.argmin_s));
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|&(m, g, _)| (m as f64, g)).collect();
    let fit = fit_power_law(&points)?;
    Ok(GapScaling { rows, fit })
}

/// Knapsack toy instances of capacity `w_cap` indexed by qubit count: size
/// `M` is `kp_toy(M - slack_bits(w_cap), w_cap)` with automatic λ.
pub fn kp_gap_family(w_cap: usize) -> impl Fn(usize) -> Result<IsingModel> {
    move |m| {
        let slack = slack_bits(w_cap as f64);
        if m <= slack {
            return invalid(format!("{m} qubits leave no room for items at capacity {w_cap}"));
        }
        Ok(kp_qubo(&kp_toy(m - slack, w_cap)?, Lambda::Auto)?.to_ising())
    }
}
