//! Experiment harness around `moind-core`: indicator tables over repeated
//! runs, CPU-time studies, per-generation entropy traces, population CSV
//! files and the `moind` command-line tool.

pub mod cli;
pub mod config;
pub mod error;
pub mod experiment;
pub mod io;
pub mod metrics;
pub mod stats;
pub mod timing;
pub mod trace;

pub use config::{Algorithm, AlgorithmEntry, ExperimentConfig};
pub use error::{HarnessError, Result};
pub use experiment::{run_experiment, ExperimentResult, RawRecord, StatRow};
pub use io::{read_population, PopulationFile, ResultManifest};
pub use stats::{summarize, Summary};
pub use timing::{timing_study_objectives, timing_study_popsize, TimingOptions, TimingTable};
pub use trace::{convergence_trace, convergence_trace_from_snapshots, trend_decreases, TracePoint};
