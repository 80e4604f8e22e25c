//! Real-coded variation operators: simulated binary crossover and
//! polynomial mutation.

use rand::Rng;

use crate::error::{Error, Result};
use crate::population::DecisionPoint;

use super::EvolutionConfig;

/// SBX offspring of one coordinate pair for spread draw `u in [0, 1)`.
///
/// The children are symmetric about the parents' midpoint, so
/// `c1 + c2 == y1 + y2` up to rounding. No clamping is applied.
pub fn sbx_pair(y1: f64, y2: f64, eta: f64, u: f64) -> (f64, f64) {
    let beta = if u <= 0.5 {
        (2.0 * u).powf(1.0 / (eta + 1.0))
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(1.0 / (eta + 1.0))
    };
    let mid = 0.5 * (y1 + y2);
    let half_spread = 0.5 * beta * (y2 - y1);
    (mid - half_spread, mid + half_spread)
}

/// Simulated binary crossover.
///
/// With probability `crossover_prob` the pair is recombined; each
/// coordinate is then crossed with probability 1/2. Children are clamped to
/// the parents' bounds.
pub fn sbx_crossover<R: Rng + ?Sized>(
    p1: &DecisionPoint<f64>,
    p2: &DecisionPoint<f64>,
    cfg: &EvolutionConfig,
    rng: &mut R,
) -> Result<(DecisionPoint<f64>, DecisionPoint<f64>)> {
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch {
            context: "crossover parents",
            expected: p1.dim(),
            found: p2.dim(),
        });
    }
    if !(rng.random::<f64>() < cfg.crossover_prob) {
        return Ok((p1.clone(), p2.clone()));
    }
    let mut c1 = p1.values().to_vec();
    let mut c2 = p2.values().to_vec();
    for (j, &(lo, hi)) in p1.bounds().iter().enumerate() {
        if rng.random::<f64>() >= 0.5 {
            continue;
        }
        let u = rng.random::<f64>();
        if (c1[j] - c2[j]).abs() <= 1e-14 {
            continue;
        }
        let (a, b) = sbx_pair(c1[j], c2[j], cfg.crossover_eta, u);
        c1[j] = a.clamp(lo, hi);
        c2[j] = b.clamp(lo, hi);
    }
    Ok((
        DecisionPoint::new(c1, p1.bounds().to_vec())?,
        DecisionPoint::new(c2, p2.bounds().to_vec())?,
    ))
}

/// Bounded polynomial mutation; each coordinate mutates with the
/// configured probability (default `1/n`).
pub fn polynomial_mutation<R: Rng + ?Sized>(
    x: &DecisionPoint<f64>,
    cfg: &EvolutionConfig,
    rng: &mut R,
) -> Result<DecisionPoint<f64>> {
    let prob = cfg.mutation_prob_for(x.dim());
    let eta = cfg.mutation_eta;
    let power = 1.0 / (eta + 1.0);
    let mut y = x.values().to_vec();
    for (j, &(lo, hi)) in x.bounds().iter().enumerate() {
        if !(rng.random::<f64>() < prob) {
            continue;
        }
        let width = hi - lo;
        let d1 = (y[j] - lo) / width;
        let d2 = (hi - y[j]) / width;
        let u = rng.random::<f64>();
        let dq = if u < 0.5 {
            let v = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1).powf(eta + 1.0);
            v.powf(power) - 1.0
        } else {
            let v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2).powf(eta + 1.0);
            1.0 - v.powf(power)
        };
        y[j] = (y[j] + dq * width).clamp(lo, hi);
    }
    DecisionPoint::new(y, x.bounds().to_vec())
}
