//! Indicator tables over repeated runs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use moind_core::indicators::EntropyOptions;
use moind_core::moea::{nsga2_run, random_search_run};
use moind_core::{non_dominated_filter, Population, Problem, ReferenceFront};
use rayon::prelude::*;

use crate::config::{Algorithm, ExperimentConfig};
use crate::error::{HarnessError, Result};
use crate::io::{read_population, write_text, ResultManifest};
use crate::metrics::{evaluate_metric, hv_config, Metric, MetricContext};
use crate::stats::summarize;

/// One indicator value of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RawRecord {
    pub problem: String,
    pub algorithm: String,
    pub run: usize,
    pub seed: u64,
    pub indicator: String,
    pub value: f64,
}

/// Mean and population standard deviation of one table cell.
#[derive(Debug, Clone, PartialEq)]
pub struct StatRow {
    pub problem: String,
    pub algorithm: String,
    pub indicator: String,
    pub mean: f64,
    pub std: f64,
    /// The per-run values the summary was computed from, in run order.
    pub values: Vec<f64>,
}

impl StatRow {
    /// `mean ( std )` with six decimals.
    pub fn cell(&self) -> String {
        format!("{:.6} ( {:.6} )", self.mean, self.std)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub rows: Vec<StatRow>,
    pub raw: Vec<RawRecord>,
    pub warnings: Vec<String>,
    pub wall_time_secs: f64,
}

impl ExperimentResult {
    pub fn row(&self, problem: &str, algorithm: &str, indicator: &str) -> Option<&StatRow> {
        self.rows
            .iter()
            .find(|r| r.problem == problem && r.algorithm == algorithm && r.indicator == indicator)
    }

    pub fn summary_csv(&self) -> String {
        let mut out = String::from("problem,algorithm,indicator,mean,std,runs\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{:.16e},{:.16e},{}",
                r.problem,
                r.algorithm,
                r.indicator,
                r.mean,
                r.std,
                r.values.len()
            );
        }
        out
    }

    pub fn raw_csv(&self) -> String {
        let mut out = String::from("problem,algorithm,run,seed,indicator,value\n");
        for r in &self.raw {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{:.16e}",
                r.problem, r.algorithm, r.run, r.seed, r.indicator, r.value
            );
        }
        out
    }
}

fn substitute(pattern: &Path, problem: &str, run: usize, seed: u64) -> PathBuf {
    let s = pattern
        .to_string_lossy()
        .replace("{problem}", problem)
        .replace("{run}", &run.to_string())
        .replace("{seed}", &seed.to_string());
    PathBuf::from(s)
}

/// Final population of one run, before any filtering.
pub fn generate_population(
    problem: &Problem,
    algorithm: &Algorithm,
    cfg: &ExperimentConfig,
    run: usize,
) -> Result<Population<f64>> {
    let seed = cfg.seed(run);
    let evo = cfg.evolution.with_seed(seed);
    match algorithm {
        Algorithm::Alias { inner, .. } => generate_population(problem, inner, cfg, run),
        Algorithm::Nsga2 => Ok(nsga2_run(problem, &evo)?.final_population),
        Algorithm::Random => Ok(random_search_run(problem, &evo)?.final_population),
        Algorithm::External { pattern, .. } => {
            let path = substitute(pattern, problem.name(), run, seed);
            let file = read_population(&path, Some(problem.name()))?;
            let m = file.population.num_objectives();
            if m != Some(problem.num_objectives()) {
                return Err(HarnessError::Data {
                    path: path.display().to_string(),
                    line: 1,
                    message: format!(
                        "expected {} objective columns for {}, found {}",
                        problem.num_objectives(),
                        problem.name(),
                        m.unwrap_or(0)
                    ),
                });
            }
            Ok(file.population)
        }
    }
}

struct Task {
    problem: usize,
    algorithm: usize,
    run: usize,
}

/// Runs every (problem, algorithm, run) combination and aggregates the
/// requested indicators. Output order follows the config: problems, then
/// algorithms, then indicators.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let start = Instant::now();
    let metrics: Vec<Metric> = cfg.metrics()?;
    let algorithms = cfg.resolved_algorithms()?;
    let problems: Vec<Problem> = cfg.problems.iter().map(|n| cfg.problem(n)).collect::<Result<_>>()?;
    let needs_front = metrics.iter().any(|m| m.needs_reference());
    let fronts: Vec<Option<ReferenceFront<f64>>> = problems
        .iter()
        .map(|p| {
            needs_front
                .then(|| p.sample_true_front(cfg.reference_front_size, cfg.front_seed))
                .transpose()
        })
        .collect::<Result<_, _>>()?;

    let tasks: Vec<Task> = (0..problems.len())
        .flat_map(|p| {
            (0..algorithms.len()).flat_map(move |a| (0..cfg.runs).map(move |run| Task { problem: p, algorithm: a, run }))
        })
        .collect();

    let entropy = EntropyOptions { tol: cfg.qp_tol, ..EntropyOptions::default() };
    let outcomes: Vec<(Vec<f64>, Vec<String>)> = tasks
        .par_iter()
        .map(|t| -> Result<(Vec<f64>, Vec<String>)> {
            let problem = &problems[t.problem];
            let mut pop = generate_population(problem, &algorithms[t.algorithm], cfg, t.run)?;
            if cfg.non_dominated_only {
                pop = non_dominated_filter(&pop)?;
            }
            let ctx = MetricContext {
                reference: fronts[t.problem].as_ref(),
                problem: Some(problem),
                hv: hv_config(Some(problem), cfg.hv.reference.clone(), cfg.hv.mc_samples, cfg.hv.seed),
                entropy,
            };
            let mut values = Vec::with_capacity(metrics.len());
            let mut warnings = Vec::new();
            for &metric in &metrics {
                let out = evaluate_metric(metric, &pop, &ctx)?;
                values.push(out.value.value);
                warnings.extend(out.warnings.into_iter().map(|w| {
                    format!("{} / {} / run {}: {w}", problem.name(), algorithms[t.algorithm].name(), t.run)
                }));
            }
            Ok((values, warnings))
        })
        .collect::<Result<_>>()?;

    let mut raw = Vec::with_capacity(tasks.len() * metrics.len());
    let mut warnings = Vec::new();
    for (t, (values, w)) in tasks.iter().zip(&outcomes) {
        warnings.extend(w.iter().cloned());
        for (metric, &value) in metrics.iter().zip(values) {
            raw.push(RawRecord {
                problem: problems[t.problem].name().to_string(),
                algorithm: algorithms[t.algorithm].name().to_string(),
                run: t.run,
                seed: cfg.seed(t.run),
                indicator: metric.to_string(),
                value,
            });
        }
    }

    let mut rows = Vec::new();
    for (pi, problem) in problems.iter().enumerate() {
        for (ai, algorithm) in algorithms.iter().enumerate() {
            for (mi, metric) in metrics.iter().enumerate() {
                let values: Vec<f64> = tasks
                    .iter()
                    .zip(&outcomes)
                    .filter(|(t, _)| t.problem == pi && t.algorithm == ai)
                    .map(|(_, (v, _))| v[mi])
                    .collect();
                let s = summarize(&values)?;
                rows.push(StatRow {
                    problem: problem.name().to_string(),
                    algorithm: algorithm.name().to_string(),
                    indicator: metric.to_string(),
                    mean: s.mean,
                    std: s.std,
                    values,
                });
            }
        }
    }
    Ok(ExperimentResult { rows, raw, warnings, wall_time_secs: start.elapsed().as_secs_f64() })
}

/// Writes `summary.csv`, `raw.csv` and `manifest.json` into `dir`.
pub fn write_experiment(result: &ExperimentResult, cfg: &ExperimentConfig, dir: &Path) -> Result<ResultManifest> {
    let summary = dir.join("summary.csv");
    let raw = dir.join("raw.csv");
    write_text(&summary, &result.summary_csv())?;
    write_text(&raw, &result.raw_csv())?;
    let config = serde_json::to_value(cfg).expect("config serialises");
    let mut manifest = ResultManifest::new("run", config);
    manifest.seeds = cfg.seeds();
    manifest.warnings = result.warnings.clone();
    manifest.outputs = vec![summary.display().to_string(), raw.display().to_string()];
    manifest.wall_time_secs.insert("total".into(), result.wall_time_secs);
    manifest.write(&dir.join("manifest.json"))?;
    Ok(manifest)
}
