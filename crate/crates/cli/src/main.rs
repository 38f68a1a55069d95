use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hbb_cli::config::{parse_list, parse_ranges, toy_instance, ExperimentConfig, ExperimentId};
use hbb_cli::plot::{emit_plot, PlotKind};
use hbb_cli::solve::{solve_blop, solve_kp, solve_tsp, Method, SolveOptions, SolveReport};
use hbb_cli::{run_experiment, CliError, Result};
use hbb_core::problem::InstanceFile;
use hbb_core::qubo::{blop_to_qubo, kp_qubo, tsp_qubo, IsingModel, Lambda, ModelFile};
use hbb_core::samplers::{SamplerKind, SamplerParams};
use hbb_core::spectrum::{adiabatic_bound, gap_scan, Schedule, DEFAULT_GRID_POINTS};

#[derive(Parser)]
#[command(name = "hbb", version, about = "Hybrid branch-and-bound with QUBO samplers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    runs: Option<usize>,
    #[arg(long)]
    reads: Option<u64>,
    #[arg(long)]
    sweeps: Option<usize>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    /// JSON config file; flags take precedence over its values.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Toy instance: `N,W` for a knapsack, `n` for a TSP.
    #[arg(long, conflicts_with = "instance")]
    toy: Option<String>,
    /// Instance document (JSON).
    #[arg(long)]
    instance: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    inst: InstanceArgs,
    #[arg(long, default_value = "bb")]
    method: String,
    /// Sampler for the hybrid method: exact, sa or random.
    #[arg(long)]
    sampler: Option<String>,
    #[arg(long)]
    max_qubits: Option<usize>,
    #[arg(long)]
    cities_budget: Option<usize>,
    /// Penalty weight; automatic when unset.
    #[arg(long)]
    lambda: Option<f64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand)]
enum Command {
    SolveKp(SolveArgs),
    SolveTsp(SolveArgs),
    SolveBlop(SolveArgs),
    /// Run an experiment and write its CSV table.
    Experiment {
        /// calls-vs-budget, kp-metrics-vs-M, kp-metrics-vs-N,
        /// tsp-metrics-vs-M, sweeps-study or gap-scaling.
        id: Option<String>,
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        sampler: Option<String>,
        /// Budgets, e.g. `14..29` or `3,4,5`.
        #[arg(long)]
        budgets: Option<String>,
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long)]
        capacity: Option<usize>,
        #[arg(long)]
        sweeps_list: Option<String>,
        #[arg(long)]
        grid_points: Option<usize>,
        #[arg(long)]
        schedule: Option<PathBuf>,
        /// Also render an SVG next to the CSV.
        #[arg(long)]
        plot: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Scan the spectral gap of the annealing Hamiltonian.
    GapScan {
        #[command(flatten)]
        inst: InstanceArgs,
        /// QUBO or Ising model document instead of an instance.
        #[arg(long, conflicts_with_all = ["toy", "instance"])]
        model: Option<PathBuf>,
        #[arg(long)]
        schedule: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
        grid_points: usize,
        /// Also evaluate the adiabatic bound.
        #[arg(long)]
        bound: bool,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Write the QUBO (or Ising) model of an instance.
    ExportQubo {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        ising: bool,
        #[arg(long)]
        lambda: Option<f64>,
        /// Output file; standard output when unset.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render an experiment CSV as SVG.
    Plot {
        csv: PathBuf,
        /// calls, kp-metrics, tsp-metrics, sweeps or gap; guessed when unset.
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_instance(args: &InstanceArgs) -> Result<InstanceFile> {
    match (&args.toy, &args.instance) {
        (Some(toy), _) => toy_instance(&parse_list(toy)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::File {
                path: path.clone(),
                source,
            })?;
            Ok(InstanceFile::from_json(&text)?)
        }
        (None, None) => Err(CliError::input("give an instance with --toy or --instance")),
    }
}

fn parse_sampler(s: &Option<String>) -> Result<Option<SamplerKind>> {
    s.as_deref().map(|s| s.parse::<SamplerKind>().map_err(CliError::from)).transpose()
}

fn base_config(common: &Common) -> Result<ExperimentConfig> {
    let mut cfg = match &common.config {
        Some(path) => ExperimentConfig::read(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(v) = common.seed {
        cfg.seed = v;
    }
    if let Some(v) = common.runs {
        cfg.runs = v;
    }
    if let Some(v) = common.reads {
        cfg.reads = v;
    }
    if let Some(v) = common.sweeps {
        cfg.sweeps = v;
    }
    if let Some(v) = &common.out_dir {
        cfg.out_dir = v.clone();
    }
    Ok(cfg)
}

fn write_report(report: &SolveReport, out_dir: Option<&Path>, name: &str) -> Result<()> {
    println!("{}", report.summary());
    if let Some(dir) = out_dir {
        let path = dir.join(format!("{name}.json"));
        std::fs::create_dir_all(dir)
            .and_then(|_| std::fs::write(&path, report.to_json() + "\n"))
            .map_err(|source| CliError::File { path, source })?;
    }
    Ok(())
}

fn solve(args: &SolveArgs, problem: &str) -> Result<()> {
    let cfg = base_config(&args.common)?;
    let mut opts = SolveOptions::new(args.method.parse::<Method>()?);
    opts.sampler = parse_sampler(&args.sampler)?;
    opts.params = SamplerParams {
        num_reads: cfg.reads,
        sweeps: cfg.sweeps,
        beta_initial: cfg.beta_initial,
        beta_final: cfg.beta_final,
        seed: cfg.seed,
    };
    opts.params.validate()?;
    opts.max_qubits = args.max_qubits;
    opts.cities_budget = args.cities_budget;
    opts.lambda = args.lambda;
    let doc = load_instance(&args.inst)?;
    let report = match problem {
        "kp" => solve_kp(&doc.to_kp()?, &opts)?,
        "tsp" => solve_tsp(&doc.to_tsp()?, &opts)?,
        _ => solve_blop(&doc.to_blop()?, &opts)?,
    };
    let out_dir = args.common.out_dir.as_deref();
    write_report(&report, out_dir, &format!("solve-{problem}"))
}

/// QUBO of an instance with automatic or fixed penalty weights.
fn instance_qubo(doc: &InstanceFile, lambda: Option<f64>) -> Result<hbb_core::qubo::QuboModel> {
    let l = lambda.map_or(Lambda::Auto, Lambda::Value);
    Ok(match doc {
        InstanceFile::Kp { .. } => kp_qubo(&doc.to_kp()?, l)?,
        InstanceFile::Tsp { .. } => tsp_qubo(&doc.to_tsp()?, l)?,
        InstanceFile::Blop { .. } => {
            let inst = doc.to_blop()?;
            let w = lambda.unwrap_or_else(|| inst.costs().iter().map(|c| c.abs()).sum::<f64>() + 1.0);
            blop_to_qubo(&inst, &vec![w; inst.num_constraints()])?
        }
    })
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::SolveKp(args) => solve(&args, "kp"),
        Command::SolveTsp(args) => solve(&args, "tsp"),
        Command::SolveBlop(args) => solve(&args, "blop"),
        Command::Experiment {
            id,
            inst,
            sampler,
            budgets,
            sizes,
            capacity,
            sweeps_list,
            grid_points,
            schedule,
            plot,
            common,
        } => {
            let mut cfg = base_config(&common)?;
            if let Some(id) = id {
                cfg.experiment = Some(id.parse::<ExperimentId>()?);
            }
            if let Some(toy) = inst.toy {
                cfg.toy = Some(parse_list(&toy)?);
                cfg.instance = None;
            }
            if let Some(path) = inst.instance {
                cfg.instance = Some(hbb_cli::InstanceSource::Path(path));
                cfg.toy = None;
            }
            if let Some(s) = parse_sampler(&sampler)? {
                cfg.sampler = Some(s);
            }
            if let Some(b) = budgets {
                cfg.budgets = Some(parse_ranges(&b)?);
            }
            if let Some(s) = sizes {
                cfg.sizes = Some(parse_ranges(&s)?);
            }
            if let Some(c) = capacity {
                cfg.capacity = Some(c);
            }
            if let Some(s) = sweeps_list {
                cfg.sweeps_list = Some(parse_ranges(&s)?);
            }
            if let Some(g) = grid_points {
                cfg.grid_points = g;
            }
            if let Some(s) = schedule {
                cfg.schedule = Some(s);
            }
            let out = run_experiment(&cfg)?;
            println!("wrote {}", out.csv.display());
            if let Some(side) = &out.sidecar {
                println!("wrote {}", side.display());
            }
            if plot {
                let svg = out.csv.with_extension("svg");
                emit_plot(&out.csv, None, &svg)?;
                println!("wrote {}", svg.display());
            }
            Ok(())
        }
        Command::GapScan {
            inst,
            model,
            schedule,
            grid_points,
            bound,
            out_dir,
        } => {
            let ising: IsingModel = match model {
                Some(path) => {
                    let text = std::fs::read_to_string(&path).map_err(|source| CliError::File { path, source })?;
                    let file = ModelFile::from_json(&text)?;
                    match file {
                        ModelFile::Ising { .. } => file.to_ising()?,
                        ModelFile::Qubo { .. } => file.to_qubo()?.to_ising(),
                    }
                }
                None => instance_qubo(&load_instance(&inst)?, None)?.to_ising(),
            };
            let sched = match schedule {
                Some(path) => Schedule::read(path)?,
                None => Schedule::linear(),
            };
            let scan = gap_scan(&ising, &sched, grid_points)?;
            let mut line = format!(
                "spins={} min_gap={} argmin_s={}",
                ising.num_spins(),
                scan.min_gap,
                scan.argmin_s
            );
            if bound {
                let b = adiabatic_bound(&ising, &sched, grid_points)?;
                line += &format!(" adiabatic_bound={} at_s={}", b.value, b.argmax_s);
            }
            println!("{line}");
            if let Some(dir) = out_dir {
                let path = dir.join("gap-scan.csv");
                let mut buf = Vec::new();
                scan.write_csv(&mut buf)?;
                std::fs::create_dir_all(&dir)
                    .and_then(|_| std::fs::write(&path, buf))
                    .map_err(|source| CliError::File { path, source })?;
            }
            Ok(())
        }
        Command::ExportQubo { inst, ising, lambda, out } => {
            let q = instance_qubo(&load_instance(&inst)?, lambda)?;
            let file = if ising { q.to_ising().to_file() } else { q.to_file() };
            match out {
                Some(path) => file.write(&path)?,
                None => {
                    use std::io::Write;
                    // A closed pipe (e.g. `| head`) is not an error for a dump.
                    let _ = writeln!(std::io::stdout().lock(), "{}", file.to_json());
                }
            }
            Ok(())
        }
        Command::Plot { csv, kind, out } => {
            let kind = kind.as_deref().map(str::parse::<PlotKind>).transpose()?;
            let out = out.unwrap_or_else(|| csv.with_extension("svg"));
            emit_plot(&csv, kind, &out)?;
            println!("wrote {}", out.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
