//! Quality indicators for multi-objective optimization.
//!
//! The crate centres on a convergence indicator that needs no reference
//! front: for every member of a population it computes the KKT residual
//! `||q(x)||^2` (the squared norm of the minimum-norm convex combination of
//! objective gradients) and aggregates the clamped residuals with a
//! Shannon-entropy formula. Alongside it live the reference-based
//! indicators (GD, IGD, their power means, the averaged Hausdorff distance
//! and the hypervolume), differentiable DTLZ/ZDT benchmarks and a small
//! NSGA-II used to generate populations.
//!
//! Numeric code is generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below are the everyday entry points.

pub mod error;
pub mod indicators;
pub mod matrix;
pub mod moea;
pub mod pareto;
pub mod population;
pub mod problems;
pub mod scalar;
pub mod simplex_qp;

pub use error::{Error, Result};
pub use matrix::Matrix;
pub use pareto::{dominates, min_distance, non_dominated_filter, non_dominated_indices};
pub use population::{
    DecisionPoint, Individual, ObjectivePoint, ObjectiveSet, Population, ReferenceFront,
};
pub use problems::{Problem, ProblemKind};
pub use scalar::Scalar;

pub type ObjectivePoint64 = ObjectivePoint<f64>;
pub type DecisionPoint64 = DecisionPoint<f64>;
pub type Individual64 = Individual<f64>;
pub type Population64 = Population<f64>;
pub type ReferenceFront64 = ReferenceFront<f64>;
pub type Matrix64 = Matrix<f64>;
pub type QpSolution64 = simplex_qp::QpSolution<f64>;
pub type EntropyTerms64 = indicators::EntropyTerms<f64>;
pub type HvConfig64 = indicators::HvConfig<f64>;

pub type ObjectivePoint32 = ObjectivePoint<f32>;
pub type DecisionPoint32 = DecisionPoint<f32>;
pub type Individual32 = Individual<f32>;
pub type Population32 = Population<f32>;
pub type ReferenceFront32 = ReferenceFront<f32>;
pub type Matrix32 = Matrix<f32>;
pub type QpSolution32 = simplex_qp::QpSolution<f32>;
pub type EntropyTerms32 = indicators::EntropyTerms<f32>;
pub type HvConfig32 = indicators::HvConfig<f32>;
