//! Experiment drivers. Each writes `<out_dir>/<id>.csv`; `gap-scaling` also
//! writes the fitted power law to `<out_dir>/gap-scaling.json`.
//!
//! Defaults when the config leaves a field unset:
//!
//! | id | instance | budgets / sizes | sampler |
//! |----|----------|-----------------|---------|
//! | calls-vs-budget | kp_toy(25,10) | the 16 largest budgets | exact |
//! | kp-metrics-vs-M | kp_toy(12,6) | 9, 12, 15 qubits | sa |
//! | kp-metrics-vs-N | W = 10 | N = 10, 11, 12 at M = N + 4 | sa |
//! | tsp-metrics-vs-M | tsp_toy(6) | 3..=6 cities | sa |
//! | sweeps-study | W = N | N = 4, 6, 8; sweeps 1, 10, 100, 1000 | sa |
//! | gap-scaling | W = 3 | M = 5..=9 | none |
//!
//! Run `r` uses seed `derive_seed(seed, r)` in every row, so rows differ only
//! in the swept parameter. The random baseline of the knapsack studies runs
//! the same hybrid search with uniform random reads in place of the sampler.

use std::path::PathBuf;

use hbb_core::branch_bound::{kp_bb, tsp_bb, BbOptions};
use hbb_core::hybrid::{call_count_study, hybrid_kp, hybrid_tsp, tsp_call_count_study, CallCountRow, HybridConfig};
use hbb_core::metrics::{aggregate, c_tilde, delta_v, hamming, p0_estimate, w_tilde, MetricReport, RunMetrics, Stat};
use hbb_core::problem::{kp_toy, tsp_toy, InstanceFile, KpInstance, TspInstance};
use hbb_core::qubo::{kp_qubo, slack_bits, Lambda};
use hbb_core::samplers::{sample_exact_bb, sample_random_tour_baseline, sample_sa, SamplerKind};
use hbb_core::spectrum::{gap_scaling_study, kp_gap_family, Schedule};
use hbb_core::derive_seed;
use serde::Serialize;

use crate::config::{ExperimentConfig, ExperimentId};
use crate::{write_file, CliError, Result};

/// Files produced by one experiment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentOutput {
    pub csv: PathBuf,
    pub sidecar: Option<PathBuf>,
}

/// Runs the configured experiment and writes its tables.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let id = cfg.id()?;
    let (csv, sidecar) = experiment_tables(cfg)?;
    let csv_path = cfg.out_dir.join(format!("{id}.csv"));
    write_file(&csv_path, csv.as_bytes())?;
    let sidecar = match sidecar {
        Some(text) => {
            let path = cfg.out_dir.join(format!("{id}.json"));
            write_file(&path, text.as_bytes())?;
            Some(path)
        }
        None => None,
    };
    Ok(ExperimentOutput { csv: csv_path, sidecar })
}

/// The CSV text and optional JSON sidecar of an experiment, without touching
/// the file system.
pub fn experiment_tables(cfg: &ExperimentConfig) -> Result<(String, Option<String>)> {
    cfg.validate()?;
    match cfg.id()? {
        ExperimentId::CallsVsBudget => calls_vs_budget(cfg).map(|c| (c, None)),
        ExperimentId::KpMetricsVsM => kp_metrics_vs_m(cfg).map(|c| (c, None)),
        ExperimentId::KpMetricsVsN => kp_metrics_vs_n(cfg).map(|c| (c, None)),
        ExperimentId::TspMetricsVsM => tsp_metrics_vs_m(cfg).map(|c| (c, None)),
        ExperimentId::SweepsStudy => sweeps_study(cfg).map(|c| (c, None)),
        ExperimentId::GapScaling => gap_scaling(cfg).map(|(c, s)| (c, Some(s))),
    }
}

fn run_seeds(cfg: &ExperimentConfig) -> Vec<u64> {
    (0..cfg.runs as u64).map(|r| derive_seed(cfg.seed, r)).collect()
}

fn hybrid_cfg(cfg: &ExperimentConfig, max_qubits: usize, default: SamplerKind) -> HybridConfig {
    HybridConfig {
        runs: cfg.runs,
        ..HybridConfig::new(max_qubits, cfg.sampler.unwrap_or(default), cfg.sampler_params(cfg.seed))
    }
}

struct Table {
    out: csv::Writer<Vec<u8>>,
}

impl Table {
    fn new(header: &[String]) -> Result<Self> {
        let mut out = csv::Writer::from_writer(Vec::new());
        out.write_record(header)?;
        Ok(Self { out })
    }

    fn row(&mut self, cells: Vec<String>) -> Result<()> {
        self.out.write_record(cells)?;
        Ok(())
    }

    fn finish(self) -> Result<String> {
        let bytes = self.out.into_inner().map_err(|e| CliError::input(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn stat_header(names: &[&str], prefix: &str) -> Vec<String> {
    names
        .iter()
        .flat_map(|n| [format!("{prefix}{n}_mean"), format!("{prefix}{n}_var")])
        .collect()
}

fn stat_cells(stats: &[Option<Stat>]) -> Vec<String> {
    stats
        .iter()
        .flat_map(|s| match s {
            // `+ 0.0` folds negative zero so tables never show "-0".
            Some(s) => [(s.mean + 0.0).to_string(), (s.variance + 0.0).to_string()],
            None => [String::new(), String::new()],
        })
        .collect()
}

fn calls_vs_budget(cfg: &ExperimentConfig) -> Result<String> {
    let hybrid = hybrid_cfg(cfg, 1, SamplerKind::Exact);
    let rows = match cfg.instance_or(kp_toy(25, 10)?.into())? {
        doc @ InstanceFile::Kp { .. } => {
            let inst = doc.to_kp()?;
            let full = inst.len() + slack_bits(inst.capacity());
            let smallest = slack_bits(inst.capacity()) + 1;
            let budgets = cfg
                .budgets
                .clone()
                .unwrap_or_else(|| (full.saturating_sub(15).max(smallest)..=full).collect());
            call_count_study(&inst, &budgets, &hybrid, cfg.seed)?
        }
        doc @ InstanceFile::Tsp { .. } => {
            let inst = doc.to_tsp()?;
            let budgets = cfg.budgets.clone().unwrap_or_else(|| (3..=inst.num_cities()).collect());
            tsp_call_count_study(&inst, &budgets, &hybrid, cfg.seed)?
        }
        other => {
            return Err(CliError::input(format!(
                "calls-vs-budget needs a kp or tsp instance, got {}",
                other.kind()
            )))
        }
    };
    let mut out = Vec::new();
    CallCountRow::write_csv(&rows, &mut out)?;
    Ok(String::from_utf8(out).expect("csv output is utf-8"))
}

const KP_METRICS: [&str; 4] = ["delta_v", "abs_delta_v", "w_tilde", "hamming"];

fn kp_stats(r: &MetricReport) -> Vec<Option<Stat>> {
    vec![r.delta_v, r.abs_delta_v, r.w_tilde, r.hamming]
}

/// Metrics of the energy-selected hybrid output against the optimum.
fn kp_run(inst: &KpInstance, opt: &[u8], z_opt: f64, hybrid: &HybridConfig, seed: u64) -> Result<RunMetrics> {
    let trace = hybrid_kp(inst, hybrid, seed)?;
    let found = trace.raw_best.unwrap_or(trace.best);
    Ok(RunMetrics {
        delta_v: Some(delta_v(found.objective, z_opt)?),
        w_tilde: Some(w_tilde(inst.weight(&found.bits)?, inst.capacity())?),
        hamming: Some(hamming(&found.bits, opt)?),
        ..Default::default()
    })
}

/// Sampler and random-baseline reports for one budget.
fn kp_budget_reports(cfg: &ExperimentConfig, inst: &KpInstance, budget: usize) -> Result<(MetricReport, MetricReport)> {
    let opt = kp_bb(inst, BbOptions::binary())?
        .best
        .ok_or_else(|| CliError::input("knapsack has no feasible packing"))?;
    let sampled = hybrid_cfg(cfg, budget, SamplerKind::Sa);
    let baseline = HybridConfig {
        sampler: SamplerKind::Random,
        ..sampled
    };
    let mut runs = Vec::with_capacity(cfg.runs);
    let mut base = Vec::with_capacity(cfg.runs);
    for seed in run_seeds(cfg) {
        runs.push(kp_run(inst, &opt.bits, opt.objective, &sampled, seed)?);
        base.push(kp_run(inst, &opt.bits, opt.objective, &baseline, seed)?);
    }
    Ok((MetricReport::from_runs(&runs)?, MetricReport::from_runs(&base)?))
}

fn kp_metrics_vs_m(cfg: &ExperimentConfig) -> Result<String> {
    let inst = cfg.instance_or(kp_toy(12, 6)?.into())?.to_kp()?;
    let full = inst.len() + slack_bits(inst.capacity());
    let budgets = cfg
        .budgets
        .clone()
        .unwrap_or_else(|| {
            let smallest = slack_bits(inst.capacity()) + 1;
            let mut b: Vec<usize> = [6, 3, 0].iter().map(|d| full.saturating_sub(*d).max(smallest)).collect();
            b.dedup();
            b
        });
    let mut header = vec!["M".to_string()];
    header.extend(stat_header(&KP_METRICS, ""));
    header.extend(stat_header(&KP_METRICS, "baseline_"));
    let mut table = Table::new(&header)?;
    for m in budgets {
        let (sampled, base) = kp_budget_reports(cfg, &inst, m)?;
        let mut cells = vec![m.to_string()];
        cells.extend(stat_cells(&kp_stats(&sampled)));
        cells.extend(stat_cells(&kp_stats(&base)));
        table.row(cells)?;
    }
    table.finish()
}

fn kp_metrics_vs_n(cfg: &ExperimentConfig) -> Result<String> {
    let w = cfg.capacity.unwrap_or(10);
    let sizes = cfg.sizes.clone().unwrap_or_else(|| vec![w, w + 1, w + 2]);
    let mut header = vec!["N".to_string(), "M".to_string()];
    header.extend(stat_header(&KP_METRICS, ""));
    header.extend(stat_header(&KP_METRICS, "baseline_"));
    let mut table = Table::new(&header)?;
    for n in sizes {
        let inst = kp_toy(n, w)?;
        let m = n + slack_bits(w as f64);
        let (sampled, base) = kp_budget_reports(cfg, &inst, m)?;
        let mut cells = vec![n.to_string(), m.to_string()];
        cells.extend(stat_cells(&kp_stats(&sampled)));
        cells.extend(stat_cells(&kp_stats(&base)));
        table.row(cells)?;
    }
    table.finish()
}

fn tsp_metrics_vs_m(cfg: &ExperimentConfig) -> Result<String> {
    let inst: TspInstance = cfg.instance_or(tsp_toy(6)?.into())?.to_tsp()?;
    let n = inst.num_cities();
    let opt = tsp_bb(&inst, BbOptions::tsp())?;
    let opt_bits = opt.tour.position_bits();
    let budgets = cfg.budgets.clone().unwrap_or_else(|| (3..=n).collect());
    let names = ["c_tilde", "hamming"];
    let mut header = vec!["M".to_string()];
    header.extend(stat_header(&names, ""));
    header.extend(stat_header(&names, "baseline_"));
    let mut table = Table::new(&header)?;
    for m in budgets {
        let hybrid = hybrid_cfg(cfg, m * m, SamplerKind::Sa);
        let mut runs = Vec::with_capacity(cfg.runs);
        for seed in run_seeds(cfg) {
            let t = hybrid_tsp(&inst, &hybrid, seed)?;
            runs.push(RunMetrics {
                c_tilde: Some(c_tilde(t.objective(), opt.cost)?),
                hamming: Some(hamming(&t.best.bits, &opt_bits)?),
                ..Default::default()
            });
        }
        let mut base = Vec::with_capacity(cfg.runs);
        for tour in sample_random_tour_baseline(&inst, cfg.runs, derive_seed(cfg.seed, m as u64))? {
            base.push(RunMetrics {
                c_tilde: Some(c_tilde(inst.tour_cost(&tour)?, opt.cost)?),
                hamming: Some(hamming(&tour.position_bits(), &opt_bits)?),
                ..Default::default()
            });
        }
        let (r, b) = (MetricReport::from_runs(&runs)?, MetricReport::from_runs(&base)?);
        let mut cells = vec![m.to_string()];
        cells.extend(stat_cells(&[r.c_tilde, r.hamming]));
        cells.extend(stat_cells(&[b.c_tilde, b.hamming]));
        table.row(cells)?;
    }
    table.finish()
}

fn sweeps_study(cfg: &ExperimentConfig) -> Result<String> {
    let sizes = cfg.sizes.clone().unwrap_or_else(|| vec![4, 6, 8]);
    let sweeps_list = cfg.sweeps_list.clone().unwrap_or_else(|| vec![1, 10, 100, 1000]);
    let mut header: Vec<String> = ["N", "M", "sweeps", "ground_energy"].map(String::from).to_vec();
    header.extend(stat_header(&["p0", "min_energy"], ""));
    let mut table = Table::new(&header)?;
    for &n in &sizes {
        let q = kp_qubo(&kp_toy(n, n)?, Lambda::Auto)?;
        let ground = sample_exact_bb(&q)?
            .min_energy()
            .ok_or_else(|| CliError::input("empty model"))?;
        for &sweeps in &sweeps_list {
            let mut p0 = Vec::with_capacity(cfg.runs);
            let mut emin = Vec::with_capacity(cfg.runs);
            for seed in run_seeds(cfg) {
                let params = hbb_core::samplers::SamplerParams {
                    sweeps,
                    ..cfg.sampler_params(seed)
                };
                let set = sample_sa(&q, &params)?;
                p0.push(p0_estimate(&set, ground)?);
                emin.push(set.min_energy().expect("at least one read"));
            }
            let mut cells = vec![n.to_string(), q.num_bits().to_string(), sweeps.to_string(), ground.to_string()];
            cells.extend(stat_cells(&[Some(aggregate(&p0)?), Some(aggregate(&emin)?)]));
            table.row(cells)?;
        }
    }
    table.finish()
}

#[derive(Serialize)]
struct GapSidecar {
    capacity: usize,
    sizes: Vec<usize>,
    grid_points: usize,
    exponent: f64,
    prefactor: f64,
    r_squared: f64,
}

fn gap_scaling(cfg: &ExperimentConfig) -> Result<(String, String)> {
    let w = cfg.capacity.unwrap_or(3);
    let sizes = cfg.sizes.clone().unwrap_or_else(|| (5..=9).collect());
    let sched = match &cfg.schedule {
        Some(path) => Schedule::from_table(&crate::read_file(path)?)?,
        None => Schedule::linear(),
    };
    let study = gap_scaling_study(kp_gap_family(w), &sizes, &sched, cfg.grid_points)?;
    let mut out = Vec::new();
    study.write_csv(&mut out)?;
    let sidecar = GapSidecar {
        capacity: w,
        sizes,
        grid_points: cfg.grid_points,
        exponent: study.fit.exponent,
        prefactor: study.fit.prefactor,
        r_squared: study.fit.r_squared,
    };
    Ok((
        String::from_utf8(out).expect("csv output is utf-8"),
        serde_json::to_string_pretty(&sidecar).expect("sidecar serializes") + "\n",
    ))
}
