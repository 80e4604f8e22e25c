//! Per-generation entropy traces.

use std::fmt::Write as _;

use moind_core::indicators::{entropy_indicator, igd, EntropyOptions};
use moind_core::moea::{nsga2_run, random_search_run, EvolutionConfig};
use moind_core::simplex_qp::DEFAULT_TOL;
use moind_core::{non_dominated_filter, Population, Problem, ReferenceFront};
use rayon::prelude::*;

use crate::config::Algorithm;
use crate::error::{usage, Result};
use crate::stats::median;

#[derive(Debug, Clone, PartialEq)]
pub struct TraceOptions {
    pub qp_tol: f64,
    /// Size of a true-front sample for an IGD column; `None` skips it.
    pub igd_front: Option<usize>,
    pub front_seed: u64,
}

impl Default for TraceOptions {
    fn default() -> Self {
        Self { qp_tol: DEFAULT_TOL, igd_front: None, front_seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TracePoint {
    pub generation: usize,
    pub evaluations: usize,
    /// Members in the non-dominated subset the values were computed on.
    pub front_size: usize,
    pub h: f64,
    pub igd: Option<f64>,
}

/// H (and optionally IGD) of the non-dominated subset of each snapshot.
/// `evaluations` is filled as `pop_size * (generation + 1)`.
pub fn convergence_trace_from_snapshots(
    problem: &Problem,
    snapshots: &[Population<f64>],
    pop_size: usize,
    opts: &TraceOptions,
) -> Result<Vec<TracePoint>> {
    let front: Option<ReferenceFront<f64>> = opts
        .igd_front
        .map(|n| problem.sample_true_front(n, opts.front_seed))
        .transpose()?;
    let entropy = EntropyOptions { tol: opts.qp_tol, parallel: false, ..EntropyOptions::default() };
    snapshots
        .par_iter()
        .enumerate()
        .map(|(g, snap)| {
            let nd = non_dominated_filter(snap)?;
            let h = entropy_indicator(&nd, Some(problem), &entropy)?.h_value;
            let igd = front.as_ref().map(|f| igd(&nd, f)).transpose()?;
            Ok(TracePoint { generation: g, evaluations: pop_size * (g + 1), front_size: nd.len(), h, igd })
        })
        .collect()
}

pub fn convergence_trace(
    problem: &Problem,
    algorithm: &Algorithm,
    evo: &EvolutionConfig,
    opts: &TraceOptions,
) -> Result<Vec<TracePoint>> {
    let run = match algorithm {
        Algorithm::Alias { inner, .. } => return convergence_trace(problem, inner, evo, opts),
        Algorithm::Nsga2 => nsga2_run(problem, evo)?,
        Algorithm::Random => random_search_run(problem, evo)?,
        Algorithm::External { name, .. } => {
            return Err(usage(format!("`{name}` produces no snapshots; traces need nsga2 or random")))
        }
    };
    convergence_trace_from_snapshots(problem, &run.snapshots, evo.pop_size, opts)
}

/// Median of the last 10% of the series is below the median of the first
/// 10% (at least one point each).
pub fn trend_decreases(series: &[f64]) -> bool {
    if series.len() < 2 {
        return false;
    }
    let w = series.len().div_ceil(10).min(series.len() / 2).max(1);
    let head = median(&series[..w]).expect("non-empty");
    let tail = median(&series[series.len() - w..]).expect("non-empty");
    tail < head
}

pub fn trace_csv(points: &[TracePoint]) -> String {
    let mut out = String::from("generation,evaluations,front_size,h,igd\n");
    for p in points {
        let igd = p.igd.map(|v| format!("{v:.16e}")).unwrap_or_default();
        let _ = writeln!(out, "{},{},{},{:.16e},{}", p.generation, p.evaluations, p.front_size, p.h, igd);
    }
    out
}
