//! Hypervolume: exact by dimension sweep/slicing (m <= 4) and Monte Carlo.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::pareto::{dominates_slice, non_dominated_indices};
use crate::population::{ObjectivePoint, ObjectiveSet};
use crate::scalar::Scalar;

/// Largest objective count handled by [`hv_exact`].
pub const MAX_EXACT_OBJECTIVES: usize = 4;

pub const DEFAULT_MC_SAMPLES: usize = 100_000;

/// Reference point, optional normalisation and sampling parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct HvConfig<T> {
    pub reference: Vec<T>,
    /// Objectives are divided componentwise by this vector (typically the
    /// true-front nadir) before anything else.
    pub normalization: Option<Vec<T>>,
    pub mc_samples: usize,
    pub seed: u64,
}

impl<T: Scalar> HvConfig<T> {
    /// Raw objectives against a user-supplied reference point.
    pub fn new(reference: Vec<T>) -> Self {
        Self {
            reference,
            normalization: None,
            mc_samples: DEFAULT_MC_SAMPLES,
            seed: 0,
        }
    }

    /// Objectives divided by `nadir`, reference `(1.1, ..., 1.1)`.
    pub fn normalized(nadir: Vec<T>) -> Self {
        Self {
            reference: vec![T::lit(1.1); nadir.len()],
            normalization: Some(nadir),
            mc_samples: DEFAULT_MC_SAMPLES,
            seed: 0,
        }
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.mc_samples = samples;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HvValue<T> {
    pub value: T,
    /// Points dropped because they exceed the reference in some objective.
    pub discarded: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HvEstimate<T> {
    pub value: T,
    pub std_error: T,
    pub samples: usize,
    pub discarded: usize,
}

/// Normalises, validates and drops points beyond the reference.
fn prepare<T, S>(set: &S, cfg: &HvConfig<T>) -> Result<(Vec<Vec<T>>, usize)>
where
    T: Scalar,
    S: ObjectiveSet<T> + ?Sized,
{
    let m = set.dim().ok_or(Error::Empty("population"))?;
    if cfg.reference.len() != m {
        return Err(Error::DimensionMismatch {
            context: "hypervolume reference point",
            expected: m,
            found: cfg.reference.len(),
        });
    }
    if cfg.reference.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("hypervolume reference point"));
    }
    if let Some(scale) = &cfg.normalization {
        if scale.len() != m {
            return Err(Error::DimensionMismatch {
                context: "hypervolume normalization",
                expected: m,
                found: scale.len(),
            });
        }
        if scale.iter().any(|&s| !(s > T::zero()) || !s.is_finite()) {
            return Err(invalid("normalization factors must be positive"));
        }
    }
    let mut kept = Vec::with_capacity(set.count());
    let mut discarded = 0;
    for i in 0..set.count() {
        let raw = set.point(i);
        if raw.len() != m {
            return Err(Error::DimensionMismatch {
                context: "hypervolume points",
                expected: m,
                found: raw.len(),
            });
        }
        let p: Vec<T> = match &cfg.normalization {
            Some(scale) => raw.iter().zip(scale).map(|(&v, &s)| v / s).collect(),
            None => raw.to_vec(),
        };
        if p.iter().zip(&cfg.reference).all(|(v, r)| v <= r) {
            kept.push(p);
        } else {
            discarded += 1;
        }
    }
    Ok((kept, discarded))
}

fn non_dominated_rows<T: Scalar>(rows: Vec<Vec<T>>) -> Vec<Vec<T>> {
    if rows.len() < 2 {
        return rows;
    }
    let points: Vec<ObjectivePoint<T>> = rows
        .into_iter()
        .map(|r| ObjectivePoint::new(r).expect("validated point"))
        .collect();
    non_dominated_indices(&points)
        .into_iter()
        .map(|i| points[i].values().to_vec())
        .collect()
}

/// Exact Lebesgue measure of the union of boxes `[a, reference]`, m in 2..=4.
pub fn hv_exact<T, S>(set: &S, cfg: &HvConfig<T>) -> Result<HvValue<T>>
where
    T: Scalar,
    S: ObjectiveSet<T> + ?Sized,
{
    let m = set.dim().ok_or(Error::Empty("population"))?;
    if m > MAX_EXACT_OBJECTIVES {
        return Err(Error::Unsupported(format!(
            "exact hypervolume for {m} objectives; use the Monte Carlo estimator"
        )));
    }
    let (kept, discarded) = prepare(set, cfg)?;
    let rows = non_dominated_rows(kept);
    let mut refs: Vec<&[T]> = rows.iter().map(Vec::as_slice).collect();
    let value = slice_volume(&mut refs, &cfg.reference, m);
    Ok(HvValue { value, discarded })
}

/// Volume dominated by `points` in their first `d` coordinates.
fn slice_volume<T: Scalar>(points: &mut [&[T]], reference: &[T], d: usize) -> T {
    if points.is_empty() {
        return T::zero();
    }
    let by = |c: usize| {
        move |a: &&[T], b: &&[T]| {
            a[c].partial_cmp(&b[c])
                .expect("finite")
                .then_with(|| a[..c].partial_cmp(&b[..c]).expect("finite"))
        }
    };
    match d {
        1 => {
            let min = points.iter().map(|p| p[0]).fold(T::infinity(), T::min);
            reference[0] - min
        }
        2 => {
            points.sort_by(by(0));
            let mut area = T::zero();
            let mut floor = reference[1];
            for p in points.iter() {
                if p[1] < floor {
                    area += (reference[0] - p[0]) * (floor - p[1]);
                    floor = p[1];
                }
            }
            area
        }
        _ => {
            let c = d - 1;
            points.sort_by(by(c));
            let mut volume = T::zero();
            for i in 0..points.len() {
                let upper = if i + 1 < points.len() {
                    points[i + 1][c]
                } else {
                    reference[c]
                };
                let height = upper - points[i][c];
                if height > T::zero() {
                    let mut prefix = points[..=i].to_vec();
                    volume += height * slice_volume(&mut prefix, reference, c);
                }
            }
            volume
        }
    }
}

/// Monte Carlo estimate over the box `[componentwise min, reference]`.
///
/// Reports the binomial standard error; identical seeds give identical
/// estimates.
pub fn hv_monte_carlo<T, S>(set: &S, cfg: &HvConfig<T>) -> Result<HvEstimate<T>>
where
    T: Scalar,
    S: ObjectiveSet<T> + ?Sized,
{
    if cfg.mc_samples == 0 {
        return Err(invalid("Monte Carlo hypervolume needs at least one sample"));
    }
    let (kept, discarded) = prepare(set, cfg)?;
    let zero = HvEstimate {
        value: T::zero(),
        std_error: T::zero(),
        samples: cfg.mc_samples,
        discarded,
    };
    if kept.is_empty() {
        return Ok(zero);
    }
    let rows = non_dominated_rows(kept);
    let m = cfg.reference.len();
    let lower: Vec<T> = (0..m)
        .map(|j| rows.iter().map(|r| r[j]).fold(T::infinity(), T::min))
        .collect();
    let widths: Vec<f64> = lower
        .iter()
        .zip(&cfg.reference)
        .map(|(&lo, &hi)| (hi - lo).to_f64_lossy())
        .collect();
    let volume: T = lower
        .iter()
        .zip(&cfg.reference)
        .fold(T::one(), |acc, (&lo, &hi)| acc * (hi - lo));
    if !(volume > T::zero()) {
        return Ok(zero);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut sample = vec![T::zero(); m];
    let mut hits = 0usize;
    for _ in 0..cfg.mc_samples {
        for j in 0..m {
            sample[j] = lower[j] + T::lit(rng.random::<f64>() * widths[j]);
        }
        if rows
            .iter()
            .any(|r| r == &sample || dominates_slice(r, &sample))
        {
            hits += 1;
        }
    }
    let n = T::from_usize_lossy(cfg.mc_samples);
    let frac = T::from_usize_lossy(hits) / n;
    Ok(HvEstimate {
        value: volume * frac,
        std_error: volume * (frac * (T::one() - frac) / n).sqrt(),
        samples: cfg.mc_samples,
        discarded,
    })
}
