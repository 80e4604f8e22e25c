//! Population generators: a compact NSGA-II and a random-search baseline.
//!
//! Randomness comes from ChaCha8 seeded with the run seed. Every operator
//! draws from its own stream of that generator (see [`RngStream`]), so adding
//! draws to one operator never shifts the numbers another operator sees.

mod nsga2;
mod operators;
mod random_search;
mod sorting;

pub use nsga2::nsga2_run;
pub use operators::{polynomial_mutation, sbx_crossover, sbx_pair};
pub use random_search::random_search_run;
pub use sorting::{crowding_distance, fast_nondominated_sort};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::population::Population;

/// Independent ChaCha8 streams used by the generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum RngStream {
    Initialization = 0,
    Selection = 1,
    Crossover = 2,
    Mutation = 3,
    Sampling = 4,
}

/// Generator for `stream` of run `seed`.
pub fn stream_rng(seed: u64, stream: RngStream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionConfig {
    pub pop_size: usize,
    pub max_evaluations: usize,
    pub crossover_prob: f64,
    pub crossover_eta: f64,
    /// Per-variable mutation probability; `None` means `1/n`.
    pub mutation_prob: Option<f64>,
    pub mutation_eta: f64,
    pub seed: u64,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self {
            pop_size: 100,
            max_evaluations: 25_000,
            crossover_prob: 0.9,
            crossover_eta: 20.0,
            mutation_prob: None,
            mutation_eta: 20.0,
            seed: 1,
        }
    }
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size < 4 || self.pop_size % 2 != 0 {
            return Err(invalid(format!(
                "pop_size must be even and at least 4, got {}",
                self.pop_size
            )));
        }
        if self.max_evaluations < self.pop_size {
            return Err(invalid("max_evaluations must be at least pop_size"));
        }
        let probs = [Some(self.crossover_prob), self.mutation_prob];
        if probs.iter().flatten().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(invalid("probabilities must lie in [0, 1]"));
        }
        if !(self.crossover_eta > 0.0 && self.mutation_eta > 0.0) {
            return Err(invalid("distribution indices must be positive"));
        }
        Ok(())
    }

    pub fn mutation_prob_for(&self, n: usize) -> f64 {
        self.mutation_prob.unwrap_or(1.0 / n as f64)
    }

    /// Number of snapshots a run emits: `ceil(max_evaluations / pop_size)`.
    pub fn generations(&self) -> usize {
        self.max_evaluations.div_ceil(self.pop_size)
    }
}

/// Output of a generator run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// Last snapshot.
    pub final_population: Population<f64>,
    /// Population after initialisation and after every generation.
    pub snapshots: Vec<Population<f64>>,
    pub evaluations: usize,
}
