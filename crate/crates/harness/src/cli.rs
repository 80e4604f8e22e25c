//! `moind` command-line interface.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use moind_core::indicators::{EntropyOptions, DEFAULT_MC_SAMPLES};
use moind_core::moea::EvolutionConfig;
use moind_core::simplex_qp::DEFAULT_TOL;
use moind_core::{Problem, ProblemKind};
use serde_json::json;

use crate::config::{Algorithm, ExperimentConfig};
use crate::error::{usage, Result};
use crate::experiment::{run_experiment, write_experiment};
use crate::io::{format_front, parse_list, read_population, read_reference, sig6, write_text, ResultManifest};
use crate::metrics::{evaluate_metric, hv_config, parse_metrics, MetricContext};
use crate::timing::{timing_study_objectives, timing_study_popsize, TimingOptions};
use crate::trace::{convergence_trace, trace_csv, trend_decreases, TraceOptions};

#[derive(Debug, Parser)]
#[command(name = "moind", version, about = "Quality indicators for multi-objective optimisation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute indicators of a population file.
    Indicators(IndicatorsArgs),
    /// Run an experiment described by a TOML config.
    Run(RunArgs),
    /// CPU-time study against population size or number of objectives.
    Timing(TimingArgs),
    /// Per-generation entropy trace of a generator run.
    Trace(TraceArgs),
    /// Sample a true Pareto front.
    Front(FrontArgs),
}

#[derive(Debug, Args)]
pub struct IndicatorsArgs {
    #[arg(long)]
    pub population: PathBuf,
    /// Reference front CSV (objective columns are used).
    #[arg(long)]
    pub reference: Option<PathBuf>,
    /// Benchmark name; overrides the file's `# problem:` tag.
    #[arg(long)]
    pub problem: Option<String>,
    /// Size of the sampled true front when no --reference is given.
    #[arg(long, default_value_t = 1000)]
    pub front_size: usize,
    #[arg(long, default_value_t = 0)]
    pub front_seed: u64,
    /// Comma-separated list, e.g. `igd,gd,delta_p:2,hv,entropy`.
    #[arg(long, default_value = "igd,gd,delta_p:2,hv,entropy")]
    pub metrics: String,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub qp_tol: f64,
    /// Raw-mode hypervolume reference point, comma separated.
    #[arg(long)]
    pub hv_ref: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MC_SAMPLES)]
    pub hv_samples: usize,
    #[arg(long, default_value_t = 0)]
    pub hv_seed: u64,
    /// Write the JSON manifest here.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Output directory; overrides `output` in the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TimingMode {
    Popsize,
    Objectives,
}

#[derive(Debug, Args)]
pub struct TimingArgs {
    #[arg(long, value_enum)]
    pub mode: TimingMode,
    #[arg(long, default_value = "dtlz2")]
    pub problem: String,
    #[arg(long, default_value_t = 3)]
    pub objectives: usize,
    #[arg(long, default_value = "100,200,400,800,1600")]
    pub sizes: String,
    /// Objective counts for `--mode objectives`.
    #[arg(long, default_value = "2,3,4,5,6,8,10")]
    pub m_values: String,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_MC_SAMPLES)]
    pub hv_samples: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub problem: String,
    #[arg(long)]
    pub objectives: Option<usize>,
    #[arg(long, default_value = "nsga2")]
    pub algo: String,
    #[arg(long, default_value_t = 10_000)]
    pub evals: usize,
    #[arg(long, default_value_t = 100)]
    pub pop_size: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub qp_tol: f64,
    /// Add an IGD column against a true front of this size.
    #[arg(long)]
    pub igd_front: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct FrontArgs {
    #[arg(long)]
    pub problem: String,
    #[arg(long)]
    pub objectives: Option<usize>,
    #[arg(long)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

/// Parses `args` and runs the command; returns the process exit status.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: Command) -> Result<()> {
    match command {
        Command::Indicators(a) => cmd_indicators(&a),
        Command::Run(a) => cmd_run(&a),
        Command::Timing(a) => cmd_timing(&a),
        Command::Trace(a) => cmd_trace(&a),
        Command::Front(a) => cmd_front(&a),
    }
}

fn objectives_for(kind: ProblemKind, m: Option<usize>) -> usize {
    m.unwrap_or(if kind == ProblemKind::Zdt2 { 2 } else { 3 })
}

fn problem_arg(name: &str, m: Option<usize>) -> Result<Problem> {
    let kind: ProblemKind = name.parse().map_err(|e: moind_core::Error| usage(e.to_string()))?;
    Problem::new(kind, objectives_for(kind, m)).map_err(|e| usage(e.to_string()))
}

fn require_file(path: &Path, flag: &str) -> Result<()> {
    if path.is_file() {
        Ok(())
    } else {
        Err(usage(format!("{flag} {}: no such file", path.display())))
    }
}

fn cmd_indicators(a: &IndicatorsArgs) -> Result<()> {
    let metrics = parse_metrics(&a.metrics)?;
    require_file(&a.population, "--population")?;
    if let Some(r) = &a.reference {
        require_file(r, "--reference")?;
    }
    if a.front_size == 0 {
        return Err(usage("--front-size must be at least 1"));
    }
    if let Some(name) = &a.problem {
        name.parse::<ProblemKind>().map_err(|e| usage(e.to_string()))?;
    }
    let hv_ref = a.hv_ref.as_deref().map(|s| parse_list::<f64>(s, "--hv-ref value")).transpose()?;
    let file = read_population(&a.population, a.problem.as_deref())?;
    let pop = file.population;
    let m = pop.num_objectives().expect("population files are non-empty");
    let problem = match pop.problem_id() {
        Some(name) => Some(Problem::from_name(name, m, pop.num_variables())?),
        None => None,
    };
    let reference = match (&a.reference, &problem) {
        (Some(path), _) => Some(read_reference(path)?),
        (None, Some(p)) if metrics.iter().any(|x| x.needs_reference()) => {
            Some(p.sample_true_front(a.front_size, a.front_seed)?)
        }
        _ => None,
    };
    if let Some(r) = &hv_ref {
        if r.len() != m {
            return Err(usage(format!("--hv-ref has {} values, population has {m} objectives", r.len())));
        }
    }
    let ctx = MetricContext {
        reference: reference.as_ref(),
        problem: problem.as_ref(),
        hv: hv_config(problem.as_ref(), hv_ref, a.hv_samples, a.hv_seed),
        entropy: EntropyOptions { tol: a.qp_tol, ..EntropyOptions::default() },
    };

    let mut manifest = ResultManifest::new(
        "indicators",
        json!({
            "population": a.population,
            "reference": a.reference,
            "problem": pop.problem_id(),
            "front_size": a.front_size,
            "front_seed": a.front_seed,
            "metrics": a.metrics,
            "qp_tol": a.qp_tol,
            "hv_ref": a.hv_ref,
            "hv_samples": a.hv_samples,
            "hv_seed": a.hv_seed,
        }),
    );
    manifest.seeds = vec![a.front_seed, a.hv_seed];
    for metric in metrics {
        let out = evaluate_metric(metric, &pop, &ctx)?;
        println!("{}\t{}", out.value.indicator, sig6(out.value.value));
        for w in &out.warnings {
            eprintln!("warning: {w}");
        }
        manifest.values.push(out.value);
        manifest.warnings.extend(out.warnings);
    }
    if let Some(path) = &a.manifest {
        manifest.write(path)?;
    }
    Ok(())
}

fn cmd_run(a: &RunArgs) -> Result<()> {
    let cfg = ExperimentConfig::load(&a.config)?;
    let dir = a
        .out
        .clone()
        .or_else(|| cfg.output.as_ref().map(|o| cfg.base_dir.join(o)))
        .ok_or_else(|| usage("no output directory: pass --out or set `output` in the config"))?;
    let result = run_experiment(&cfg)?;
    write_experiment(&result, &cfg, &dir)?;
    for row in &result.rows {
        println!("{}\t{}\t{}\t{}", row.problem, row.algorithm, row.indicator, row.cell());
    }
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn cmd_timing(a: &TimingArgs) -> Result<()> {
    let opts = TimingOptions { repetitions: a.reps, seed: a.seed, mc_samples: a.hv_samples, ..TimingOptions::default() };
    let table = match a.mode {
        TimingMode::Popsize => {
            let sizes = parse_list::<usize>(&a.sizes, "size")?;
            timing_study_popsize(&problem_arg(&a.problem, Some(a.objectives))?, &sizes, &opts)?
        }
        TimingMode::Objectives => timing_study_objectives(&parse_list::<usize>(&a.m_values, "objective count")?, &opts)?,
    };
    let csv = a.out.join(format!("timing_{}.csv", table.study));
    write_text(&csv, &table.to_csv())?;
    let mut manifest = ResultManifest::new(
        "timing",
        json!({
            "mode": table.study,
            "problem": a.problem,
            "objectives": a.objectives,
            "sizes": a.sizes,
            "m_values": a.m_values,
            "reps": a.reps,
            "hv_samples": a.hv_samples,
        }),
    );
    manifest.seeds = vec![a.seed];
    manifest.warnings = table.flags.clone();
    manifest.outputs = vec![csv.display().to_string()];
    manifest.wall_time_secs = table
        .rows
        .iter()
        .map(|r| (format!("{} m={} k={}", r.indicator, r.m, r.k), r.median_secs))
        .collect();
    manifest.write(&a.out.join("manifest.json"))?;
    for r in &table.rows {
        println!("m={}\tk={}\t{}\t{} s", r.m, r.k, r.indicator, sig6(r.median_secs));
    }
    for f in &table.flags {
        eprintln!("note: {f}");
    }
    Ok(())
}

fn cmd_trace(a: &TraceArgs) -> Result<()> {
    let problem = problem_arg(&a.problem, a.objectives)?;
    let algorithm = Algorithm::builtin(&a.algo)?;
    let evo = EvolutionConfig { pop_size: a.pop_size, max_evaluations: a.evals, seed: a.seed, ..Default::default() };
    evo.validate().map_err(|e| usage(e.to_string()))?;
    let opts = TraceOptions { qp_tol: a.qp_tol, igd_front: a.igd_front, front_seed: 0 };
    let points = convergence_trace(&problem, &algorithm, &evo, &opts)?;
    let csv = a.out.join("trace.csv");
    write_text(&csv, &trace_csv(&points))?;
    let h: Vec<f64> = points.iter().map(|p| p.h).collect();
    let mut manifest = ResultManifest::new(
        "trace",
        json!({
            "problem": problem.name(),
            "objectives": problem.num_objectives(),
            "algorithm": algorithm.name(),
            "evals": a.evals,
            "pop_size": a.pop_size,
            "qp_tol": a.qp_tol,
            "igd_front": a.igd_front,
        }),
    );
    manifest.seeds = vec![a.seed];
    manifest.outputs = vec![csv.display().to_string()];
    manifest.values.push(crate::io::IndicatorValue {
        indicator: "entropy".into(),
        parameters: [("generation".to_string(), json!(points.len() - 1))].into(),
        value: *h.last().expect("at least one generation"),
    });
    if !trend_decreases(&h) {
        manifest.warnings.push("H shows no decreasing trend over the run".into());
    }
    manifest.write(&a.out.join("manifest.json"))?;
    println!(
        "{} generations, H first {} last {}",
        points.len(),
        sig6(h[0]),
        sig6(*h.last().expect("non-empty"))
    );
    Ok(())
}

fn cmd_front(a: &FrontArgs) -> Result<()> {
    if a.count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let problem = problem_arg(&a.problem, a.objectives)?;
    let front = problem.sample_true_front::<f64>(a.count, a.seed)?;
    write_text(&a.out, &format_front(&front, Some(problem.name())))?;
    println!("wrote {} points to {}", front.len(), a.out.display());
    Ok(())
}

