//! CPU-time studies of the indicators against population size and number
//! of objectives.

use std::fmt::Write as _;
use std::time::Instant;

use moind_core::indicators::{
    delta_p, entropy_indicator, hv_exact, hv_monte_carlo, EntropyOptions, HvConfig,
    DEFAULT_MC_SAMPLES, MAX_EXACT_OBJECTIVES,
};
use moind_core::moea::{stream_rng, RngStream};
use moind_core::simplex_qp::DEFAULT_TOL;
use moind_core::{Population, Problem, ProblemKind};

use crate::error::{usage, HarnessError, Result};
use crate::stats::median;

#[derive(Debug, Clone, PartialEq)]
pub struct TimingOptions {
    /// Timed repetitions per cell; the median is reported.
    pub repetitions: usize,
    pub seed: u64,
    pub qp_tol: f64,
    pub mc_samples: usize,
}

impl Default for TimingOptions {
    fn default() -> Self {
        Self { repetitions: 5, seed: 1, qp_tol: DEFAULT_TOL, mc_samples: DEFAULT_MC_SAMPLES }
    }
}

pub const MIN_REPETITIONS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub problem: String,
    pub m: usize,
    pub k: usize,
    pub reference_size: usize,
    pub indicator: String,
    pub method: String,
    pub median_secs: f64,
    pub samples_secs: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimingTable {
    pub study: String,
    pub rows: Vec<TimingRow>,
    /// Soft-check observations; reported, never fatal.
    pub flags: Vec<String>,
}

impl TimingTable {
    pub fn series(&self, indicator: &str) -> Vec<&TimingRow> {
        self.rows.iter().filter(|r| r.indicator == indicator).collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("study,problem,m,k,reference_size,indicator,method,median_secs,repetitions\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{:.9e},{}",
                self.study,
                r.problem,
                r.m,
                r.k,
                r.reference_size,
                r.indicator,
                r.method,
                r.median_secs,
                r.samples_secs.len()
            );
        }
        out
    }
}

fn time_median<F: FnMut() -> Result<()>>(reps: usize, mut f: F) -> Result<Vec<f64>> {
    let mut samples = Vec::with_capacity(reps);
    for _ in 0..reps {
        let t = Instant::now();
        f()?;
        samples.push(t.elapsed().as_secs_f64());
    }
    Ok(samples)
}

/// Uniform random population with Jacobians attached, so the H timing
/// covers only the QP solves and the aggregation.
fn random_population(problem: &Problem, k: usize, seed: u64) -> Result<Population<f64>> {
    let mut rng = stream_rng(seed, RngStream::Sampling);
    let members = (0..k)
        .map(|_| problem.individual(problem.random_decision(&mut rng), true))
        .collect::<moind_core::Result<Vec<_>>>()?;
    Ok(Population::new(members)?.with_problem(problem.name()))
}

/// Reference point 10% beyond the population's componentwise maximum, so
/// every member contributes.
fn enclosing_reference(pop: &Population<f64>) -> Vec<f64> {
    let m = pop.num_objectives().unwrap_or(0);
    (0..m)
        .map(|j| {
            let hi = pop.members().iter().map(|i| i.objectives().values()[j]).fold(f64::MIN, f64::max);
            hi + 0.1 * hi.abs().max(1.0)
        })
        .collect()
}

fn time_cell(problem: &Problem, k: usize, reference_size: usize, opts: &TimingOptions) -> Result<Vec<TimingRow>> {
    let pop = random_population(problem, k, opts.seed.wrapping_add(k as u64))?;
    let front = problem.sample_true_front::<f64>(reference_size, opts.seed)?;
    let m = problem.num_objectives();
    let hv_cfg = HvConfig::new(enclosing_reference(&pop)).with_samples(opts.mc_samples).with_seed(opts.seed);
    let entropy = EntropyOptions { tol: opts.qp_tol, parallel: false, ..EntropyOptions::default() };
    let reps = opts.repetitions;

    let d = time_median(reps, || delta_p(&pop, &front, 2.0).map(drop).map_err(Into::into))?;
    let (hv_method, hv) = if m <= MAX_EXACT_OBJECTIVES {
        ("exact", time_median(reps, || hv_exact(&pop, &hv_cfg).map(drop).map_err(Into::into))?)
    } else {
        ("monte_carlo", time_median(reps, || hv_monte_carlo(&pop, &hv_cfg).map(drop).map_err(Into::into))?)
    };
    let h = time_median(reps, || entropy_indicator(&pop, Some(problem), &entropy).map(drop).map_err(Into::into))?;

    let row = |indicator: &str, method: &str, samples: Vec<f64>| TimingRow {
        problem: problem.name().to_string(),
        m,
        k,
        reference_size,
        indicator: indicator.to_string(),
        method: method.to_string(),
        median_secs: median(&samples).expect("at least one repetition"),
        samples_secs: samples,
    };
    Ok(vec![row("delta_p:2", "exact", d), row("hv", hv_method, hv), row("entropy", "qp", h)])
}

fn single_worker<T: Send>(f: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| HarnessError::Other(format!("cannot build timing thread pool: {e}")))?;
    pool.install(f)
}

fn check(opts: &TimingOptions, values: &[usize], what: &str) -> Result<()> {
    if opts.repetitions < MIN_REPETITIONS {
        return Err(usage(format!("timing needs at least {MIN_REPETITIONS} repetitions")));
    }
    if values.is_empty() || values.contains(&0) {
        return Err(usage(format!("{what} must be a non-empty list of positive values")));
    }
    Ok(())
}

fn flag_cost_order(table: &mut TimingTable) {
    let d = table.series("delta_p:2").into_iter().map(|r| (r.k, r.m, r.median_secs)).collect::<Vec<_>>();
    let h = table.series("entropy").into_iter().map(|r| r.median_secs).collect::<Vec<_>>();
    for ((k, m, dt), ht) in d.into_iter().zip(h) {
        if dt > ht {
            table
                .flags
                .push(format!("m={m} k={k}: delta_p:2 ({dt:.3e} s) slower than entropy ({ht:.3e} s)"));
        }
    }
}

/// Random `k`-member populations for each size, timed against a `4k`-point
/// reference front.
pub fn timing_study_popsize(problem: &Problem, sizes: &[usize], opts: &TimingOptions) -> Result<TimingTable> {
    check(opts, sizes, "sizes")?;
    let rows = single_worker(|| {
        let mut rows = Vec::new();
        for &k in sizes {
            rows.extend(time_cell(problem, k, 4 * k, opts)?);
        }
        Ok(rows)
    })?;
    let mut table = TimingTable { study: "popsize".into(), rows, flags: Vec::new() };
    flag_cost_order(&mut table);
    Ok(table)
}

/// DTLZ2 with `M` objectives, `50M` members and a `100M`-point reference.
pub fn timing_study_objectives(m_values: &[usize], opts: &TimingOptions) -> Result<TimingTable> {
    check(opts, m_values, "objective counts")?;
    let problems: Vec<Problem> = m_values
        .iter()
        .map(|&m| Problem::new(ProblemKind::Dtlz2, m).map_err(|e| usage(e.to_string())))
        .collect::<Result<_>>()?;
    let rows = single_worker(|| {
        let mut rows = Vec::new();
        for p in &problems {
            let m = p.num_objectives();
            rows.extend(time_cell(p, 50 * m, 100 * m, opts)?);
        }
        Ok(rows)
    })?;
    let mut table = TimingTable { study: "objectives".into(), rows, flags: Vec::new() };
    flag_cost_order(&mut table);
    Ok(table)
}
