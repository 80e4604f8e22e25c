//! Experiment configuration files (TOML).
//!
//! ```toml
//! problems = ["dtlz1", "dtlz2", "dtlz5"]
//! objectives = 3
//! algorithms = ["nsga2", "random", { name = "nsga3", path = "pops/{problem}_{run}.csv" }]
//! # a built-in generator under a second name:
//! # algorithms = ["nsga2", { name = "baseline", algorithm = "random" }]
//! runs = 30
//! seed_base = 1
//! indicators = ["delta_p:2", "hv", "entropy"]
//! output = "results"
//!
//! [evolution]
//! pop_size = 100
//! max_evaluations = 25000
//! ```

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use moind_core::moea::EvolutionConfig;
use moind_core::simplex_qp::DEFAULT_TOL;
use moind_core::indicators::DEFAULT_MC_SAMPLES;
use moind_core::Problem;
use serde::{Deserialize, Serialize};

use crate::error::{usage, HarnessError, Result};
use crate::metrics::{parse_metrics, Metric};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgorithmEntry {
    Builtin(String),
    /// A built-in generator reported under another name.
    Alias { name: String, algorithm: String },
    /// Populations produced elsewhere. `{problem}`, `{run}` and `{seed}` in
    /// the path are substituted per run; relative paths start at the
    /// config file's directory.
    External { name: String, path: String },
}

/// A population source resolved from an [`AlgorithmEntry`].
#[derive(Debug, Clone, PartialEq)]
pub enum Algorithm {
    Nsga2,
    Random,
    External { name: String, pattern: PathBuf },
    Alias { name: String, inner: Box<Algorithm> },
}

impl Algorithm {
    pub fn name(&self) -> &str {
        match self {
            Algorithm::Nsga2 => "nsga2",
            Algorithm::Random => "random",
            Algorithm::External { name, .. } | Algorithm::Alias { name, .. } => name,
        }
    }

    pub fn builtin(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "nsga2" | "nsga-ii" => Ok(Algorithm::Nsga2),
            "random" => Ok(Algorithm::Random),
            other => Err(usage(format!(
                "unknown algorithm `{other}` (built in: nsga2, random; external populations use {{ name, path }})"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolutionSection {
    pub pop_size: usize,
    pub max_evaluations: usize,
    pub crossover_prob: f64,
    pub crossover_eta: f64,
    pub mutation_prob: Option<f64>,
    pub mutation_eta: f64,
}

impl Default for EvolutionSection {
    fn default() -> Self {
        let d = EvolutionConfig::default();
        Self {
            pop_size: d.pop_size,
            max_evaluations: d.max_evaluations,
            crossover_prob: d.crossover_prob,
            crossover_eta: d.crossover_eta,
            mutation_prob: d.mutation_prob,
            mutation_eta: d.mutation_eta,
        }
    }
}

impl EvolutionSection {
    pub fn with_seed(&self, seed: u64) -> EvolutionConfig {
        EvolutionConfig {
            pop_size: self.pop_size,
            max_evaluations: self.max_evaluations,
            crossover_prob: self.crossover_prob,
            crossover_eta: self.crossover_eta,
            mutation_prob: self.mutation_prob,
            mutation_eta: self.mutation_eta,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HvSection {
    /// Raw-mode reference point; when absent objectives are normalised by
    /// the problem's nadir and compared against `(1.1, ..., 1.1)`.
    pub reference: Option<Vec<f64>>,
    pub mc_samples: usize,
    pub seed: u64,
}

impl Default for HvSection {
    fn default() -> Self {
        Self { reference: None, mc_samples: DEFAULT_MC_SAMPLES, seed: 0 }
    }
}

fn default_objectives() -> usize {
    3
}
fn default_runs() -> usize {
    30
}
fn default_seed_base() -> u64 {
    1
}
fn default_front_size() -> usize {
    1000
}
fn default_qp_tol() -> f64 {
    DEFAULT_TOL
}
fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problems: Vec<String>,
    #[serde(default = "default_objectives")]
    pub objectives: usize,
    /// Decision dimension; the problem's conventional value when absent.
    #[serde(default)]
    pub variables: Option<usize>,
    pub algorithms: Vec<AlgorithmEntry>,
    #[serde(default = "default_runs")]
    pub runs: usize,
    /// Run `j` (0-based) uses seed `seed_base + j`.
    #[serde(default = "default_seed_base")]
    pub seed_base: u64,
    #[serde(default)]
    pub evolution: EvolutionSection,
    pub indicators: Vec<String>,
    #[serde(default = "default_front_size")]
    pub reference_front_size: usize,
    #[serde(default)]
    pub front_seed: u64,
    #[serde(default = "default_qp_tol")]
    pub qp_tol: f64,
    #[serde(default)]
    pub hv: HvSection,
    /// Score only the non-dominated members of each final population.
    #[serde(default = "default_true")]
    pub non_dominated_only: bool,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| usage(format!("invalid config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| match e.kind() {
            std::io::ErrorKind::NotFound => usage(format!("config file {} not found", path.display())),
            _ => HarnessError::io(path, e),
        })?;
        let mut cfg = Self::from_toml(&text)?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(usage("runs must be at least 1"));
        }
        if self.problems.is_empty() || self.algorithms.is_empty() || self.indicators.is_empty() {
            return Err(usage("problems, algorithms and indicators must be non-empty"));
        }
        for name in &self.problems {
            self.problem(name)?;
        }
        let algorithms = self.resolved_algorithms()?;
        let mut seen = HashSet::new();
        for a in &algorithms {
            if !seen.insert(a.name().to_string()) {
                return Err(usage(format!("algorithm name `{}` used twice", a.name())));
            }
        }
        self.metrics()?;
        if self.reference_front_size == 0 {
            return Err(usage("reference_front_size must be at least 1"));
        }
        if !(self.qp_tol > 0.0) || self.hv.mc_samples == 0 {
            return Err(usage("qp_tol and hv.mc_samples must be positive"));
        }
        if algorithms.iter().any(|a| !matches!(a, Algorithm::External { .. })) {
            self.evolution.with_seed(self.seed_base).validate().map_err(|e| usage(e.to_string()))?;
        }
        Ok(())
    }

    pub fn problem(&self, name: &str) -> Result<Problem> {
        Problem::from_name(name, self.objectives, self.variables).map_err(|e| usage(e.to_string()))
    }

    pub fn metrics(&self) -> Result<Vec<Metric>> {
        parse_metrics(&self.indicators.join(","))
    }

    pub fn resolved_algorithms(&self) -> Result<Vec<Algorithm>> {
        self.algorithms
            .iter()
            .map(|entry| match entry {
                AlgorithmEntry::Builtin(name) => Algorithm::builtin(name),
                AlgorithmEntry::Alias { name, algorithm } => Ok(Algorithm::Alias {
                    name: name.clone(),
                    inner: Box::new(Algorithm::builtin(algorithm)?),
                }),
                AlgorithmEntry::External { name, path } => Ok(Algorithm::External {
                    name: name.clone(),
                    pattern: self.base_dir.join(path),
                }),
            })
            .collect()
    }

    pub fn seed(&self, run: usize) -> u64 {
        self.seed_base + run as u64
    }

    pub fn seeds(&self) -> Vec<u64> {
        (0..self.runs).map(|j| self.seed(j)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
problems = ["dtlz2"]
algorithms = ["nsga2", { name = "ext", path = "p/{problem}_{run}.csv" }]
indicators = ["igd", "hv"]
runs = 2
"#;

    #[test]
    fn defaults_follow_the_protocol() {
        let cfg = ExperimentConfig::from_toml(MINIMAL).unwrap();
        assert_eq!(cfg.objectives, 3);
        assert_eq!(cfg.evolution.pop_size, 100);
        assert_eq!(cfg.evolution.max_evaluations, 25_000);
        assert_eq!(cfg.seeds(), vec![1, 2]);
        let algs = cfg.resolved_algorithms().unwrap();
        assert_eq!(algs[0], Algorithm::Nsga2);
        assert_eq!(algs[1].name(), "ext");
    }

    #[test]
    fn invalid_configs_are_usage_errors() {
        let cases = [
            MINIMAL.replace("runs = 2", "runs = 0"),
            MINIMAL.replace("dtlz2", "dtlz9"),
            MINIMAL.replace("\"nsga2\"", "\"moead\""),
            MINIMAL.replace("\"hv\"", "\"spread\""),
            MINIMAL.to_string() + "bogus = 1\n",
            MINIMAL.replace("\"nsga2\"", "\"nsga2\", \"nsga2\""),
            MINIMAL.to_string() + "[evolution]\npop_size = 3\n",
        ];
        for text in cases {
            let err = ExperimentConfig::from_toml(&text).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{text}\n{err}");
        }
        assert_eq!(ExperimentConfig::load(Path::new("/no/such/file.toml")).unwrap_err().exit_code(), 2);
    }
}
