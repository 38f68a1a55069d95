use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use hbb_core::problem::{kp_toy, tsp_toy, InstanceFile};
use hbb_core::samplers::{SamplerKind, SamplerParams};
use serde::{Deserialize, Serialize};

use crate::{read_file, CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentId {
    CallsVsBudget,
    #[serde(rename = "kp-metrics-vs-M")]
    KpMetricsVsM,
    #[serde(rename = "kp-metrics-vs-N")]
    KpMetricsVsN,
    #[serde(rename = "tsp-metrics-vs-M")]
    TspMetricsVsM,
    SweepsStudy,
    GapScaling,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 6] = [
        ExperimentId::CallsVsBudget,
        ExperimentId::KpMetricsVsM,
        ExperimentId::KpMetricsVsN,
        ExperimentId::TspMetricsVsM,
        ExperimentId::SweepsStudy,
        ExperimentId::GapScaling,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentId::CallsVsBudget => "calls-vs-budget",
            ExperimentId::KpMetricsVsM => "kp-metrics-vs-M",
            ExperimentId::KpMetricsVsN => "kp-metrics-vs-N",
            ExperimentId::TspMetricsVsM => "tsp-metrics-vs-M",
            ExperimentId::SweepsStudy => "sweeps-study",
            ExperimentId::GapScaling => "gap-scaling",
        }
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ExperimentId {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                let known: Vec<&str> = Self::ALL.iter().map(|id| id.as_str()).collect();
                CliError::input(format!("unknown experiment {s:?}; known: {}", known.join(", ")))
            })
    }
}

/// Where an instance comes from: a path to an instance document or the
/// document itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InstanceSource {
    Path(PathBuf),
    Inline(InstanceFile),
}

impl InstanceSource {
    pub fn load(&self) -> Result<InstanceFile> {
        match self {
            InstanceSource::Path(p) => Ok(InstanceFile::from_json(&read_file(p)?)?),
            InstanceSource::Inline(doc) => Ok(doc.clone()),
        }
    }
}

/// Everything an experiment run depends on. Unset optional fields fall back
/// to per-experiment defaults; see [`crate::experiments`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: Option<ExperimentId>,
    /// Toy instance: `[N, W]` for knapsack, `[n]` for TSP.
    pub toy: Option<Vec<usize>>,
    pub instance: Option<InstanceSource>,
    pub sampler: Option<SamplerKind>,
    pub reads: u64,
    pub sweeps: usize,
    pub beta_initial: f64,
    pub beta_final: f64,
    pub seed: u64,
    pub runs: usize,
    /// Qubit budgets (knapsack) or residual city budgets (TSP).
    pub budgets: Option<Vec<usize>>,
    /// Item counts, or qubit counts for `gap-scaling`.
    pub sizes: Option<Vec<usize>>,
    /// Knapsack capacity for the size-varying experiments.
    pub capacity: Option<usize>,
    pub sweeps_list: Option<Vec<usize>>,
    pub grid_points: usize,
    pub schedule: Option<PathBuf>,
    pub out_dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        let p = SamplerParams::default();
        Self {
            experiment: None,
            toy: None,
            instance: None,
            sampler: None,
            reads: p.num_reads,
            sweeps: p.sweeps,
            beta_initial: p.beta_initial,
            beta_final: p.beta_final,
            seed: 0,
            runs: 20,
            budgets: None,
            sizes: None,
            capacity: None,
            sweeps_list: None,
            grid_points: hbb_core::spectrum::DEFAULT_GRID_POINTS,
            schedule: None,
            out_dir: PathBuf::from("results"),
        }
    }
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| CliError::input(format!("config: {e}")))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&read_file(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn id(&self) -> Result<ExperimentId> {
        self.experiment.ok_or_else(|| CliError::input("no experiment id given"))
    }

    pub fn sampler_params(&self, seed: u64) -> SamplerParams {
        SamplerParams {
            num_reads: self.reads,
            sweeps: self.sweeps,
            beta_initial: self.beta_initial,
            beta_final: self.beta_final,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.sampler_params(self.seed).validate()?;
        if self.runs < 1 {
            return Err(CliError::input("runs must be at least 1"));
        }
        Ok(())
    }

    /// The configured instance, or `default` when neither `toy` nor
    /// `instance` is set. A toy with one number is a TSP, with two a
    /// knapsack.
    pub fn instance_or(&self, default: InstanceFile) -> Result<InstanceFile> {
        match (&self.toy, &self.instance) {
            (Some(_), Some(_)) => Err(CliError::input("give either a toy or an instance, not both")),
            (Some(toy), None) => toy_instance(toy),
            (None, Some(src)) => src.load(),
            (None, None) => Ok(default),
        }
    }
}

/// `[N, W]` is `kp_toy(N, W)`, `[n]` is `tsp_toy(n)`.
pub fn toy_instance(toy: &[usize]) -> Result<InstanceFile> {
    match *toy {
        [n, w] => Ok(kp_toy(n, w)?.into()),
        [n] => Ok(tsp_toy(n)?.into()),
        _ => Err(CliError::input(format!(
            "a toy is N,W for a knapsack or n for a TSP, got {toy:?}"
        ))),
    }
}

/// Parses `"25,10"` or `"6"`.
pub fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| CliError::input(format!("bad number {t:?} in list {text:?}: {e}")))
        })
        .collect()
}

/// Parses a list of integers and inclusive ranges, e.g. `"5..9"` or
/// `"3,5,8..10"`.
pub fn parse_ranges(text: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        match part.split_once("..") {
            Some((a, b)) => {
                let a = parse_list(a)?[0];
                let b = parse_list(b.trim_start_matches('='))?[0];
                if b < a {
                    return Err(CliError::input(format!("empty range {part:?}")));
                }
                out.extend(a..=b);
            }
            None => out.extend(parse_list(part)?),
        }
    }
    Ok(out)
}
