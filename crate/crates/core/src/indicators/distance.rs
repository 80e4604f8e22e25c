//! Reference-based distance indicators.
//!
//! `igd` keeps the `1/r` factor outside the square root, while the power-mean
//! family `igd_p` / `gd_p` averages inside the root. The two coincide up to
//! `igd(V, L) = igd_p(V, L, 2) / sqrt(r)`, which is how `igd` is computed.

use crate::error::{invalid, Error, Result};
use crate::pareto::min_squared_distance;
use crate::population::ObjectiveSet;
use crate::scalar::Scalar;

fn check_sets<T: Scalar, A, B>(a: &A, b: &B) -> Result<()>
where
    A: ObjectiveSet<T> + ?Sized,
    B: ObjectiveSet<T> + ?Sized,
{
    let (da, db) = match (a.dim(), b.dim()) {
        (Some(da), Some(db)) => (da, db),
        _ => return Err(Error::Empty("point set")),
    };
    if da != db {
        return Err(Error::DimensionMismatch {
            context: "indicator point sets",
            expected: da,
            found: db,
        });
    }
    Ok(())
}

/// `((1/r) sum_{y in reference} d(y, approx)^p)^(1/p)`.
pub fn igd_p<T, V, L>(approx: &V, reference: &L, p: T) -> Result<T>
where
    T: Scalar,
    V: ObjectiveSet<T> + ?Sized,
    L: ObjectiveSet<T> + ?Sized,
{
    if !(p >= T::one()) || !p.is_finite() {
        return Err(invalid("power p must be a finite value >= 1"));
    }
    check_sets(approx, reference)?;
    let two = T::lit(2.0);
    let half_p = p / two;
    let mut total = T::zero();
    for i in 0..reference.count() {
        let d2 = min_squared_distance(reference.point(i), approx)?;
        total += if p == two { d2 } else { d2.powf(half_p) };
    }
    let mean = total / T::from_usize_lossy(reference.count());
    Ok(if p == two {
        mean.sqrt()
    } else if p == T::one() {
        mean
    } else {
        mean.powf(p.recip())
    })
}

/// `gd_p(V, L, p) = igd_p(L, V, p)`.
pub fn gd_p<T, V, L>(approx: &V, reference: &L, p: T) -> Result<T>
where
    T: Scalar,
    V: ObjectiveSet<T> + ?Sized,
    L: ObjectiveSet<T> + ?Sized,
{
    igd_p(reference, approx, p)
}

/// `(1/r) (sum_{y in reference} d(y, approx)^2)^(1/2)`.
pub fn igd<T, V, L>(approx: &V, reference: &L) -> Result<T>
where
    T: Scalar,
    V: ObjectiveSet<T> + ?Sized,
    L: ObjectiveSet<T> + ?Sized,
{
    let r = T::from_usize_lossy(reference.count());
    Ok(igd_p(approx, reference, T::lit(2.0))? / r.sqrt())
}

/// `gd(V, L) = igd(L, V)`.
pub fn gd<T, V, L>(approx: &V, reference: &L) -> Result<T>
where
    T: Scalar,
    V: ObjectiveSet<T> + ?Sized,
    L: ObjectiveSet<T> + ?Sized,
{
    igd(reference, approx)
}

/// Averaged Hausdorff distance `max(igd_p(a, b), gd_p(a, b))`.
pub fn delta_p<T, A, B>(a: &A, b: &B, p: T) -> Result<T>
where
    T: Scalar,
    A: ObjectiveSet<T> + ?Sized,
    B: ObjectiveSet<T> + ?Sized,
{
    Ok(igd_p(a, b, p)?.max(gd_p(a, b, p)?))
}
