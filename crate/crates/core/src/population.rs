//! Domain types: objective and decision points, individuals, populations and
//! reference fronts.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{all_finite, Scalar};

/// A point `f(x)` in objective space. Always has at least two finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ObjectivePoint<T> {
    values: Vec<T>,
}

impl<T: Scalar> ObjectivePoint<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "objective vectors need at least 2 entries, got {}",
                values.len()
            )));
        }
        if !all_finite(&values) {
            return Err(Error::NonFinite("objective vector"));
        }
        Ok(Self { values })
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }
}

impl<T> AsRef<[T]> for ObjectivePoint<T> {
    fn as_ref(&self) -> &[T] {
        &self.values
    }
}

/// A decision vector together with its closed box bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionPoint<T> {
    values: Vec<T>,
    bounds: Vec<(T, T)>,
}

impl<T: Scalar> DecisionPoint<T> {
    pub fn new(values: Vec<T>, bounds: Vec<(T, T)>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty("decision vector"));
        }
        if bounds.len() != values.len() {
            return Err(Error::DimensionMismatch {
                context: "decision bounds",
                expected: values.len(),
                found: bounds.len(),
            });
        }
        if !all_finite(&values) {
            return Err(Error::NonFinite("decision vector"));
        }
        for (index, (&v, &(lo, hi))) in values.iter().zip(&bounds).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidArgument(format!(
                    "degenerate bound interval at coordinate {index}"
                )));
            }
            if v < lo || v > hi {
                return Err(Error::OutOfBounds {
                    index,
                    value: v.to_f64_lossy(),
                    lower: lo.to_f64_lossy(),
                    upper: hi.to_f64_lossy(),
                });
            }
        }
        Ok(Self { values, bounds })
    }

    /// Decision vector in the unit box `[0, 1]^n`.
    pub fn in_unit_box(values: Vec<T>) -> Result<Self> {
        let bounds = vec![(T::zero(), T::one()); values.len()];
        Self::new(values, bounds)
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    #[inline]
    pub fn bounds(&self) -> &[(T, T)] {
        &self.bounds
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.values.len()
    }
}

/// One member of a population.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual<T> {
    decision: Option<DecisionPoint<T>>,
    objectives: ObjectivePoint<T>,
    jacobian: Option<Matrix<T>>,
}

impl<T: Scalar> Individual<T> {
    pub fn new(decision: DecisionPoint<T>, objectives: ObjectivePoint<T>) -> Self {
        Self {
            decision: Some(decision),
            objectives,
            jacobian: None,
        }
    }

    /// Objective-space-only member, e.g. ingested from another tool.
    pub fn objective_only(objectives: ObjectivePoint<T>) -> Self {
        Self {
            decision: None,
            objectives,
            jacobian: None,
        }
    }

    /// Attaches the `m x n` Jacobian (row `i` is the gradient of `f_i`).
    pub fn with_jacobian(mut self, jacobian: Matrix<T>) -> Result<Self> {
        if jacobian.rows() != self.objectives.dim() {
            return Err(Error::DimensionMismatch {
                context: "jacobian rows",
                expected: self.objectives.dim(),
                found: jacobian.rows(),
            });
        }
        if let Some(d) = &self.decision {
            if jacobian.cols() != d.dim() {
                return Err(Error::DimensionMismatch {
                    context: "jacobian columns",
                    expected: d.dim(),
                    found: jacobian.cols(),
                });
            }
        }
        if !jacobian.is_finite() {
            return Err(Error::NonFinite("jacobian"));
        }
        self.jacobian = Some(jacobian);
        Ok(self)
    }

    #[inline]
    pub fn decision(&self) -> Option<&DecisionPoint<T>> {
        self.decision.as_ref()
    }

    #[inline]
    pub fn objectives(&self) -> &ObjectivePoint<T> {
        &self.objectives
    }

    #[inline]
    pub fn jacobian(&self) -> Option<&Matrix<T>> {
        self.jacobian.as_ref()
    }
}

/// Ordered collection of individuals sharing `m` (and `n`, where decision
/// vectors are present).
#[derive(Debug, Clone, PartialEq)]
pub struct Population<T> {
    members: Vec<Individual<T>>,
    problem_id: Option<String>,
}

impl<T: Scalar> Population<T> {
    pub fn new(members: Vec<Individual<T>>) -> Result<Self> {
        if let Some(first) = members.first() {
            let m = first.objectives.dim();
            let n = members.iter().find_map(|i| i.decision().map(DecisionPoint::dim));
            for ind in &members {
                if ind.objectives.dim() != m {
                    return Err(Error::DimensionMismatch {
                        context: "population objectives",
                        expected: m,
                        found: ind.objectives.dim(),
                    });
                }
                if let (Some(n), Some(d)) = (n, ind.decision()) {
                    if d.dim() != n {
                        return Err(Error::DimensionMismatch {
                            context: "population decision vectors",
                            expected: n,
                            found: d.dim(),
                        });
                    }
                }
            }
        }
        Ok(Self {
            members,
            problem_id: None,
        })
    }

    /// Population of objective-only members.
    pub fn from_objectives(points: Vec<ObjectivePoint<T>>) -> Result<Self> {
        Self::new(points.into_iter().map(Individual::objective_only).collect())
    }

    pub fn with_problem(mut self, name: impl Into<String>) -> Self {
        self.problem_id = Some(name.into());
        self
    }

    pub fn set_problem(&mut self, name: Option<String>) {
        self.problem_id = name;
    }

    pub fn problem_id(&self) -> Option<&str> {
        self.problem_id.as_deref()
    }

    #[inline]
    pub fn members(&self) -> &[Individual<T>] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Individual<T>> {
        self.members
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.members.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Objective count, or `None` for an empty population.
    pub fn num_objectives(&self) -> Option<usize> {
        self.members.first().map(|i| i.objectives.dim())
    }

    /// Decision dimension if any member carries a decision vector.
    pub fn num_variables(&self) -> Option<usize> {
        self.members
            .iter()
            .find_map(|i| i.decision().map(DecisionPoint::dim))
    }

    /// True when every member has a decision vector.
    pub fn has_decisions(&self) -> bool {
        !self.members.is_empty() && self.members.iter().all(|i| i.decision.is_some())
    }

    /// Members at `indices`, in that order, keeping the problem tag.
    pub fn select(&self, indices: &[usize]) -> Self {
        Self {
            members: indices.iter().map(|&i| self.members[i].clone()).collect(),
            problem_id: self.problem_id.clone(),
        }
    }

    pub fn objective_points(&self) -> Vec<ObjectivePoint<T>> {
        self.members.iter().map(|i| i.objectives.clone()).collect()
    }
}

/// Objective-space sample of the true Pareto front.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceFront<T> {
    points: Vec<ObjectivePoint<T>>,
}

impl<T: Scalar> ReferenceFront<T> {
    pub fn new(points: Vec<ObjectivePoint<T>>) -> Result<Self> {
        let m = points.first().ok_or(Error::Empty("reference front"))?.dim();
        if let Some(bad) = points.iter().find(|p| p.dim() != m) {
            return Err(Error::DimensionMismatch {
                context: "reference front",
                expected: m,
                found: bad.dim(),
            });
        }
        Ok(Self { points })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        Self::new(
            rows.into_iter()
                .map(ObjectivePoint::new)
                .collect::<Result<_>>()?,
        )
    }

    pub fn points(&self) -> &[ObjectivePoint<T>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn num_objectives(&self) -> usize {
        self.points[0].dim()
    }
}

/// Read access to a finite set of objective vectors.
///
/// Implemented by [`Population`], [`ReferenceFront`] and plain slices of
/// [`ObjectivePoint`], so distance and volume indicators accept any of them.
pub trait ObjectiveSet<T> {
    fn count(&self) -> usize;

    fn point(&self, i: usize) -> &[T];

    /// Objective count of the first point, `None` when empty.
    fn dim(&self) -> Option<usize> {
        (self.count() > 0).then(|| self.point(0).len())
    }
}

impl<T: Scalar> ObjectiveSet<T> for Population<T> {
    fn count(&self) -> usize {
        self.members.len()
    }

    fn point(&self, i: usize) -> &[T] {
        self.members[i].objectives.values()
    }
}

impl<T: Scalar> ObjectiveSet<T> for ReferenceFront<T> {
    fn count(&self) -> usize {
        self.points.len()
    }

    fn point(&self, i: usize) -> &[T] {
        self.points[i].values()
    }
}

impl<T: Scalar> ObjectiveSet<T> for [ObjectivePoint<T>] {
    fn count(&self) -> usize {
        self.len()
    }

    fn point(&self, i: usize) -> &[T] {
        self[i].values()
    }
}

impl<T: Scalar> ObjectiveSet<T> for Vec<ObjectivePoint<T>> {
    fn count(&self) -> usize {
        self.len()
    }

    fn point(&self, i: usize) -> &[T] {
        self[i].values()
    }
}
