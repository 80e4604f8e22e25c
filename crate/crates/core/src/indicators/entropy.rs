//! Entropy indicator over KKT residuals.
//!
//! For each member the squared KKT residual `||q(x_i)||^2` is clamped to
//! `1/e`, where `-x log2 x` peaks, and the indicator is
//! `H = (1/2k) sum_i -q_i log2 q_i` with `0 log2 0 = 0`. `H = 0` means every
//! member is first-order Pareto stationary; the upper bound
//! `log2(e) / (2e)` means none is close.

use rayon::prelude::*;

use crate::error::{invalid, Error, Result};
use crate::matrix::Matrix;
use crate::population::Population;
use crate::problems::Problem;
use crate::scalar::Scalar;
use crate::simplex_qp::{kkt_residual, DEFAULT_MAX_ITER, DEFAULT_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyOptions<T> {
    pub tol: T,
    pub max_iter: usize,
    /// Solve the per-member QPs on the rayon pool.
    pub parallel: bool,
}

impl<T: Scalar> Default for EntropyOptions<T> {
    fn default() -> Self {
        Self {
            tol: T::lit(DEFAULT_TOL),
            max_iter: DEFAULT_MAX_ITER,
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyTerms<T> {
    /// Raw `||q(x_i)||^2` per member.
    pub residuals: Vec<T>,
    /// `min(1/e, ||q(x_i)||^2)` per member.
    pub clamped: Vec<T>,
    pub h_value: T,
    /// Members whose QP hit the iteration cap.
    pub unconverged: usize,
}

/// `log2(e) / (2e)`, about 0.265369.
pub fn h_upper_bound<T: Scalar>() -> T {
    let e = T::one().exp();
    T::lit(0.5) * e.log2() / e
}

/// `-q log2 q` with the `0 log2 0 = 0` convention.
#[inline]
pub fn entropy_term<T: Scalar>(q: T) -> T {
    if q == T::zero() {
        T::zero()
    } else {
        -q * q.log2()
    }
}

#[inline]
fn clamp_residual<T: Scalar>(value: T) -> T {
    value.min((-T::one()).exp())
}

/// Aggregates precomputed squared residuals into the indicator.
pub fn entropy_from_residuals<T: Scalar>(residuals: &[T]) -> Result<EntropyTerms<T>> {
    if residuals.is_empty() {
        return Err(Error::Empty("population"));
    }
    if residuals.iter().any(|&r| !(r >= T::zero()) || r.is_nan()) {
        return Err(invalid("squared residuals must be non-negative"));
    }
    let clamped: Vec<T> = residuals.iter().map(|&r| clamp_residual(r)).collect();
    let total: T = clamped.iter().map(|&q| entropy_term(q)).sum();
    let k = T::from_usize_lossy(residuals.len());
    Ok(EntropyTerms {
        residuals: residuals.to_vec(),
        h_value: total / (T::lit(2.0) * k),
        clamped,
        unconverged: 0,
    })
}

/// Entropy indicator of a population.
///
/// Members carrying a Jacobian use it; the others need a decision vector
/// and a problem, either passed explicitly or resolved from the
/// population's problem tag.
pub fn entropy_indicator<T: Scalar>(
    pop: &Population<T>,
    problem: Option<&Problem>,
    opts: &EntropyOptions<T>,
) -> Result<EntropyTerms<T>> {
    if pop.is_empty() {
        return Err(Error::Empty("population"));
    }
    let needs_problem = pop.members().iter().any(|i| i.jacobian().is_none());
    let resolved;
    let problem = match (problem, needs_problem) {
        (Some(p), _) => Some(p),
        (None, false) => None,
        (None, true) => {
            if !pop.has_decisions() {
                return Err(Error::DecisionRequired(
                    "the entropy indicator needs decision vectors or Jacobians".into(),
                ));
            }
            let name = pop.problem_id().ok_or_else(|| {
                Error::DecisionRequired(
                    "members lack Jacobians and no problem was supplied".into(),
                )
            })?;
            let m = pop.num_objectives().expect("non-empty");
            resolved = Problem::from_name(name, m, pop.num_variables())?;
            Some(&resolved)
        }
    };

    let solve = |i: usize| -> Result<(T, bool)> {
        let member = &pop.members()[i];
        let computed: Matrix<T>;
        let jac = match member.jacobian() {
            Some(j) => j,
            None => {
                let d = member.decision().ok_or_else(|| {
                    Error::DecisionRequired(format!("member {i} has no decision vector"))
                })?;
                computed = problem.expect("resolved above").jacobian(d)?;
                &computed
            }
        };
        let (sol, _) = kkt_residual(jac, opts.tol, opts.max_iter)?;
        Ok((sol.residual_norm_sq, sol.converged))
    };

    let solved: Vec<Result<(T, bool)>> = if opts.parallel {
        (0..pop.len()).into_par_iter().map(solve).collect()
    } else {
        (0..pop.len()).map(solve).collect()
    };
    let mut residuals = Vec::with_capacity(pop.len());
    let mut unconverged = 0;
    for r in solved {
        let (v, ok) = r?;
        residuals.push(v);
        unconverged += usize::from(!ok);
    }
    let mut terms = entropy_from_residuals(&residuals)?;
    terms.unconverged = unconverged;
    Ok(terms)
}
