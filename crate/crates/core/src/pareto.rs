//! Pareto dominance, non-dominated filtering and point-to-set distance.
//!
//! Comparisons are exact: `u` dominates `v` iff `u_i <= v_i` for every `i`
//! and `u != v`. Equal vectors never dominate each other, so duplicates
//! survive filtering together.

use crate::error::{Error, Result};
use crate::population::{ObjectivePoint, ObjectiveSet, Population};
use crate::scalar::{squared_distance, Scalar};

/// Dominance test for two objective points of equal dimension.
pub fn dominates<T: Scalar>(u: &ObjectivePoint<T>, v: &ObjectivePoint<T>) -> Result<bool> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            context: "dominance",
            expected: u.dim(),
            found: v.dim(),
        });
    }
    Ok(dominates_slice(u.values(), v.values()))
}

/// Slice form of [`dominates`]; callers guarantee equal lengths.
#[inline]
pub fn dominates_slice<T: Scalar>(u: &[T], v: &[T]) -> bool {
    debug_assert_eq!(u.len(), v.len());
    let mut differs = false;
    for (&a, &b) in u.iter().zip(v) {
        if a > b {
            return false;
        }
        if a != b {
            differs = true;
        }
    }
    differs
}

/// Indices of the members no other member dominates, in input order.
pub fn non_dominated_indices<T: Scalar, S: ObjectiveSet<T> + ?Sized>(set: &S) -> Vec<usize> {
    let k = set.count();
    (0..k)
        .filter(|&i| {
            let p = set.point(i);
            !(0..k).any(|j| j != i && dominates_slice(set.point(j), p))
        })
        .collect()
}

/// Members of `pop` that are dominated by no other member.
pub fn non_dominated_filter<T: Scalar>(pop: &Population<T>) -> Result<Population<T>> {
    if pop.is_empty() {
        return Err(Error::Empty("population"));
    }
    Ok(pop.select(&non_dominated_indices(pop)))
}

/// Euclidean distance from `y` to the nearest member of `set`.
pub fn min_distance<T: Scalar, S: ObjectiveSet<T> + ?Sized>(y: &[T], set: &S) -> Result<T> {
    Ok(min_squared_distance(y, set)?.sqrt())
}

pub(crate) fn min_squared_distance<T: Scalar, S: ObjectiveSet<T> + ?Sized>(
    y: &[T],
    set: &S,
) -> Result<T> {
    if set.count() == 0 {
        return Err(Error::Empty("point set"));
    }
    let mut best = T::infinity();
    for i in 0..set.count() {
        let s = set.point(i);
        if s.len() != y.len() {
            return Err(Error::DimensionMismatch {
                context: "distance",
                expected: y.len(),
                found: s.len(),
            });
        }
        best = best.min(squared_distance(y, s));
    }
    Ok(best)
}
