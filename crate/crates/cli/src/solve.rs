//! The `solve-*` subcommands.

use std::fmt;
use std::str::FromStr;

use hbb_core::branch_bound::{bb_generic, kp_bb, tsp_bb, BbOptions, SearchStats};
use hbb_core::hybrid::{hybrid_kp, hybrid_tsp, HybridConfig, HybridTrace};
use hbb_core::problem::{BlopInstance, KpInstance, Tour, TspInstance};
use hbb_core::qubo::{blop_to_qubo, kp_qubo, slack_bits, tsp_qubo, Lambda};
use hbb_core::samplers::{SampleSet, SamplerKind, SamplerParams};
use hbb_core::Bits;
use serde::{Deserialize, Serialize};

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bb,
    Hybrid,
    Exact,
    Sa,
}

impl FromStr for Method {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bb" => Ok(Method::Bb),
            "hybrid" => Ok(Method::Hybrid),
            "exact" => Ok(Method::Exact),
            "sa" => Ok(Method::Sa),
            other => Err(CliError::input(format!("unknown method {other:?} (expected bb, hybrid, exact or sa)"))),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bb => "bb",
            Method::Hybrid => "hybrid",
            Method::Exact => "exact",
            Method::Sa => "sa",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    pub method: Method,
    /// Sampler used by `hybrid`; `sa` when unset.
    pub sampler: Option<SamplerKind>,
    pub params: SamplerParams,
    /// Knapsack and BLOP qubit budget for `hybrid`; whole problem when unset.
    pub max_qubits: Option<usize>,
    /// TSP residual city budget for `hybrid`; all cities when unset.
    pub cities_budget: Option<usize>,
    pub lambda: Option<f64>,
}

impl SolveOptions {
    pub fn new(method: Method) -> Self {
        Self {
            method,
            sampler: None,
            params: SamplerParams::default(),
            max_qubits: None,
            cities_budget: None,
            lambda: None,
        }
    }

    fn lambda(&self) -> Lambda {
        self.lambda.map_or(Lambda::Auto, Lambda::Value)
    }

    fn direct_sampler(&self) -> SamplerKind {
        match self.method {
            Method::Exact => SamplerKind::Exact,
            _ => SamplerKind::Sa,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub problem: String,
    pub method: Method,
    /// `None` when no feasible solution was found.
    pub objective: Option<f64>,
    pub bits: Option<Bits>,
    pub tour: Option<Tour>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<SearchStats>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<HybridTrace>,
}

impl SolveReport {
    fn new(problem: &str, method: Method) -> Self {
        Self {
            problem: problem.into(),
            method,
            objective: None,
            bits: None,
            tour: None,
            stats: None,
            trace: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One-line summary for the terminal.
    pub fn summary(&self) -> String {
        let mut line = match (self.problem.as_str(), self.objective) {
            ("tsp", Some(c)) => format!("cost={c}"),
            (_, Some(z)) => format!("z={z}"),
            (_, None) => "no feasible solution".to_string(),
        };
        if let Some(t) = &self.tour {
            let order: Vec<String> = t.order().iter().map(|c| c.to_string()).collect();
            line += &format!(" tour={}", order.join("-"));
        } else if let Some(bits) = &self.bits {
            let s: String = bits.iter().map(|b| if *b == 1 { '1' } else { '0' }).collect();
            line += &format!(" x={s}");
        }
        if let Some(t) = &self.trace {
            line += &format!(" classical_calls={} quantum_calls={}", t.classical_calls, t.quantum_calls);
        }
        line + &format!(" method={}", self.method)
    }
}

/// Lowest-objective feasible read after decoding, first in sample order on ties.
fn best_decoded<T>(set: &SampleSet, mut decode: impl FnMut(&[u8]) -> Result<Option<(f64, T)>>) -> Result<Option<(f64, T)>> {
    let mut best: Option<(f64, T)> = None;
    for s in &set.entries {
        if let Some((obj, value)) = decode(&s.bits)? {
            if best.as_ref().is_none_or(|(b, _)| obj < *b) {
                best = Some((obj, value));
            }
        }
    }
    Ok(best)
}

pub fn solve_kp(inst: &KpInstance, opts: &SolveOptions) -> Result<SolveReport> {
    let mut report = SolveReport::new("kp", opts.method);
    match opts.method {
        Method::Bb => {
            let r = kp_bb(inst, BbOptions::binary())?;
            report.stats = Some(r.stats);
            if let Some(best) = r.best {
                report.objective = Some(best.objective);
                report.bits = Some(best.bits);
            }
        }
        Method::Hybrid => {
            let full = inst.len() + slack_bits(inst.capacity());
            let cfg = HybridConfig::new(
                opts.max_qubits.unwrap_or(full),
                opts.sampler.unwrap_or(SamplerKind::Sa),
                opts.params,
            );
            let t = hybrid_kp(inst, &cfg, opts.params.seed)?;
            report.objective = Some(t.best.objective);
            report.bits = Some(t.best.bits.clone());
            report.trace = Some(t);
        }
        Method::Exact | Method::Sa => {
            let q = kp_qubo(inst, opts.lambda())?;
            let set = opts.direct_sampler().build(opts.params).sample(&q, opts.params.seed)?;
            let n = inst.len();
            let best = best_decoded(&set, |bits| {
                let items = &bits[..n];
                if !inst.is_feasible(items)? {
                    return Ok(None);
                }
                Ok(Some((inst.objective(items)?, items.to_vec())))
            })?;
            if let Some((z, bits)) = best {
                report.objective = Some(z);
                report.bits = Some(bits);
            }
        }
    }
    Ok(report)
}

pub fn solve_tsp(inst: &TspInstance, opts: &SolveOptions) -> Result<SolveReport> {
    let mut report = SolveReport::new("tsp", opts.method);
    let n = inst.num_cities();
    let tour = match opts.method {
        Method::Bb => {
            let r = tsp_bb(inst, BbOptions::tsp())?;
            report.stats = Some(r.stats);
            Some(r.tour)
        }
        Method::Hybrid => {
            let cities = opts.cities_budget.unwrap_or(n);
            let cfg = HybridConfig::for_cities(cities, opts.sampler.unwrap_or(SamplerKind::Sa), opts.params);
            let t = hybrid_tsp(inst, &cfg, opts.params.seed)?;
            let tour = t.tour.clone();
            report.trace = Some(t);
            tour
        }
        Method::Exact | Method::Sa => {
            let q = tsp_qubo(inst, opts.lambda())?;
            let set = opts.direct_sampler().build(opts.params).sample(&q, opts.params.seed)?;
            best_decoded(&set, |bits| match Tour::from_position_bits(bits, n) {
                Some(t) => Ok(Some((inst.tour_cost(&t)?, t))),
                None => Ok(None),
            })?
            .map(|(_, t)| t)
        }
    };
    if let Some(t) = tour {
        report.objective = Some(inst.tour_cost(&t)?);
        report.bits = Some(t.position_bits());
        report.tour = Some(t);
    }
    Ok(report)
}

/// Penalty weight that makes every unit of constraint violation cost more
/// than the whole objective range.
fn blop_lambda(inst: &BlopInstance) -> f64 {
    inst.costs().iter().map(|c| c.abs()).sum::<f64>() + 1.0
}

pub fn solve_blop(inst: &BlopInstance, opts: &SolveOptions) -> Result<SolveReport> {
    let mut report = SolveReport::new("blop", opts.method);
    match opts.method {
        Method::Bb => {
            let r = bb_generic(inst, BbOptions::binary())?;
            report.stats = Some(r.stats);
            if let Some(best) = r.best {
                report.objective = Some(best.objective);
                report.bits = Some(best.bits);
            }
        }
        Method::Hybrid => {
            return Err(CliError::input("the hybrid method is available for kp and tsp instances only"));
        }
        Method::Exact | Method::Sa => {
            let lambda = opts.lambda.unwrap_or_else(|| blop_lambda(inst));
            let q = blop_to_qubo(inst, &vec![lambda; inst.num_constraints()])?;
            let set = opts.direct_sampler().build(opts.params).sample(&q, opts.params.seed)?;
            let n = inst.num_vars();
            let best = best_decoded(&set, |bits| {
                let x = &bits[..n];
                let (z, ok) = inst.evaluate(x)?;
                Ok(ok.then(|| (z, x.to_vec())))
            })?;
            if let Some((z, bits)) = best {
                report.objective = Some(z);
                report.bits = Some(bits);
            }
        }
    }
    Ok(report)
}
