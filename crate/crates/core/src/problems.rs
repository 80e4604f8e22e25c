//! Differentiable benchmark problems with analytic Jacobians.
//!
//! DTLZ problems split the decision vector into `m - 1` position variables
//! followed by `k = n - m + 1` distance variables. All problems live in the
//! unit box `[0, 1]^n`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{invalid, Error, Result};
use crate::matrix::Matrix;
use crate::pareto::non_dominated_indices;
use crate::population::{DecisionPoint, Individual, ObjectivePoint, ReferenceFront};
use crate::scalar::Scalar;

/// Disconnected Pareto-optimal intervals of each DTLZ7 position coordinate.
///
/// The left endpoints of the second interval and the right endpoints are the
/// points where `t (1 + sin 3 pi t)` first exceeds its running maximum and where
/// it attains its local maxima.
pub const DTLZ7_FRONT_INTERVALS: [(f64, f64); 2] = [
    (0.0, 0.251_411_836_088_9),
    (0.631_626_530_700_0, 0.859_400_856_6),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProblemKind {
    Dtlz1,
    Dtlz2,
    Dtlz5,
    Dtlz7,
    Zdt2,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 5] = [
        ProblemKind::Dtlz1,
        ProblemKind::Dtlz2,
        ProblemKind::Dtlz5,
        ProblemKind::Dtlz7,
        ProblemKind::Zdt2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Dtlz1 => "dtlz1",
            ProblemKind::Dtlz2 => "dtlz2",
            ProblemKind::Dtlz5 => "dtlz5",
            ProblemKind::Dtlz7 => "dtlz7",
            ProblemKind::Zdt2 => "zdt2",
        }
    }

    /// Conventional decision dimension for `m` objectives.
    pub fn default_variables(self, m: usize) -> usize {
        match self {
            ProblemKind::Dtlz1 => m + 4,
            ProblemKind::Dtlz2 | ProblemKind::Dtlz5 | ProblemKind::Dtlz7 => m + 9,
            ProblemKind::Zdt2 => 30,
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.name() == lower)
            .ok_or_else(|| Error::UnknownProblem(s.to_string()))
    }
}

/// A benchmark instance: problem family plus objective and variable counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Problem {
    kind: ProblemKind,
    m: usize,
    n: usize,
}

impl Problem {
    /// Instance with the conventional decision dimension.
    pub fn new(kind: ProblemKind, m: usize) -> Result<Self> {
        Self::with_variables(kind, m, kind.default_variables(m))
    }

    pub fn with_variables(kind: ProblemKind, m: usize, n: usize) -> Result<Self> {
        if m < 2 {
            return Err(invalid(format!("{kind} needs at least 2 objectives, got {m}")));
        }
        if kind == ProblemKind::Zdt2 {
            if m != 2 {
                return Err(invalid(format!("zdt2 has exactly 2 objectives, got {m}")));
            }
            if n < 2 {
                return Err(invalid("zdt2 needs at least 2 variables"));
            }
        } else if n < m {
            return Err(invalid(format!(
                "{kind} with {m} objectives needs at least {m} variables, got {n}"
            )));
        }
        Ok(Self { kind, m, n })
    }

    /// Registry lookup by name; `n = None` selects the conventional dimension.
    pub fn from_name(name: &str, m: usize, n: Option<usize>) -> Result<Self> {
        let kind: ProblemKind = name.parse()?;
        match n {
            Some(n) => Self::with_variables(kind, m, n),
            None => Self::new(kind, m),
        }
    }

    pub fn kind(&self) -> ProblemKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn num_objectives(&self) -> usize {
        self.m
    }

    pub fn num_variables(&self) -> usize {
        self.n
    }

    /// Number of distance variables (`k` in the DTLZ convention).
    fn distance_count(&self) -> usize {
        self.n + 1 - self.m
    }

    pub fn bounds<T: Scalar>(&self) -> Vec<(T, T)> {
        vec![(T::zero(), T::one()); self.n]
    }

    fn check_input<T: Scalar>(&self, x: &[T]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                context: "decision vector",
                expected: self.n,
                found: x.len(),
            });
        }
        for (index, &v) in x.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite("decision vector"));
            }
            if v < T::zero() || v > T::one() {
                return Err(Error::OutOfBounds {
                    index,
                    value: v.to_f64_lossy(),
                    lower: 0.0,
                    upper: 1.0,
                });
            }
        }
        Ok(())
    }

    pub fn evaluate<T: Scalar>(&self, x: &DecisionPoint<T>) -> Result<ObjectivePoint<T>> {
        ObjectivePoint::new(self.evaluate_values(x.values())?)
    }

    /// Objective values for a raw decision slice (bounds and length checked).
    pub fn evaluate_values<T: Scalar>(&self, x: &[T]) -> Result<Vec<T>> {
        self.check_input(x)?;
        Ok(match self.kind {
            ProblemKind::Dtlz1 => self.dtlz1(x, false).0,
            ProblemKind::Dtlz2 | ProblemKind::Dtlz5 => self.spherical(x, false).0,
            ProblemKind::Dtlz7 => self.dtlz7(x, false).0,
            ProblemKind::Zdt2 => zdt2(x, false).0,
        })
    }

    /// Analytic `m x n` Jacobian; row `i` is the gradient of `f_i`.
    pub fn jacobian<T: Scalar>(&self, x: &DecisionPoint<T>) -> Result<Matrix<T>> {
        self.jacobian_values(x.values())
    }

    pub fn jacobian_values<T: Scalar>(&self, x: &[T]) -> Result<Matrix<T>> {
        self.check_input(x)?;
        let jac = match self.kind {
            ProblemKind::Dtlz1 => self.dtlz1(x, true).1,
            ProblemKind::Dtlz2 | ProblemKind::Dtlz5 => self.spherical(x, true).1,
            ProblemKind::Dtlz7 => self.dtlz7(x, true).1,
            ProblemKind::Zdt2 => zdt2(x, true).1,
        };
        Ok(jac.expect("jacobian requested"))
    }

    /// Evaluates `x` and packs decision, objectives and (optionally) Jacobian.
    pub fn individual<T: Scalar>(
        &self,
        x: DecisionPoint<T>,
        with_jacobian: bool,
    ) -> Result<Individual<T>> {
        let f = self.evaluate(&x)?;
        let ind = if with_jacobian {
            let j = self.jacobian(&x)?;
            Individual::new(x, f).with_jacobian(j)?
        } else {
            Individual::new(x, f)
        };
        Ok(ind)
    }

    /// Central-difference Jacobian; one-sided in columns where `x +- h` would
    /// leave the box.
    pub fn finite_diff_jacobian<T: Scalar>(
        &self,
        x: &DecisionPoint<T>,
        h: T,
    ) -> Result<FiniteDiffJacobian<T>> {
        if !(h > T::zero()) {
            return Err(invalid("finite-difference step must be positive"));
        }
        let base = self.evaluate_values(x.values())?;
        let mut matrix = Matrix::zeros(self.m, self.n);
        let mut one_sided = vec![false; self.n];
        let mut probe = x.values().to_vec();
        for j in 0..self.n {
            let xj = x.values()[j];
            let (lo, hi) = x.bounds()[j];
            let can_up = xj + h <= hi;
            let can_down = xj - h >= lo;
            let column: Vec<T> = match (can_down, can_up) {
                (true, true) => {
                    probe[j] = xj + h;
                    let up = self.evaluate_values(&probe)?;
                    probe[j] = xj - h;
                    let down = self.evaluate_values(&probe)?;
                    let two_h = h + h;
                    up.iter().zip(&down).map(|(&a, &b)| (a - b) / two_h).collect()
                }
                (false, true) => {
                    one_sided[j] = true;
                    probe[j] = xj + h;
                    let up = self.evaluate_values(&probe)?;
                    up.iter().zip(&base).map(|(&a, &b)| (a - b) / h).collect()
                }
                (true, false) => {
                    one_sided[j] = true;
                    probe[j] = xj - h;
                    let down = self.evaluate_values(&probe)?;
                    base.iter().zip(&down).map(|(&a, &b)| (a - b) / h).collect()
                }
                (false, false) => {
                    return Err(invalid("finite-difference step exceeds the bound interval"))
                }
            };
            probe[j] = xj;
            for (i, v) in column.into_iter().enumerate() {
                matrix[(i, j)] = v;
            }
        }
        Ok(FiniteDiffJacobian { matrix, one_sided })
    }

    /// Pareto-optimal decision vector with the given position coordinates.
    ///
    /// Distance variables are set to their optimum (0.5 for DTLZ1/2/5, 0 for
    /// DTLZ7 and ZDT2). `position` has `m - 1` entries (1 for ZDT2).
    pub fn pareto_optimal_decision<T: Scalar>(&self, position: &[T]) -> Result<DecisionPoint<T>> {
        let expected = self.m - 1;
        if position.len() != expected {
            return Err(Error::DimensionMismatch {
                context: "position variables",
                expected,
                found: position.len(),
            });
        }
        let fill = match self.kind {
            ProblemKind::Dtlz1 | ProblemKind::Dtlz2 | ProblemKind::Dtlz5 => T::lit(0.5),
            ProblemKind::Dtlz7 | ProblemKind::Zdt2 => T::zero(),
        };
        let mut x = position.to_vec();
        x.resize(self.n, fill);
        DecisionPoint::new(x, self.bounds())
    }

    /// Uniformly random decision vector in the box.
    pub fn random_decision<R: Rng + ?Sized>(&self, rng: &mut R) -> DecisionPoint<f64> {
        let x = (0..self.n).map(|_| rng.random::<f64>()).collect();
        DecisionPoint::new(x, self.bounds()).expect("unit-box sample is in bounds")
    }

    /// Componentwise maximum of the true Pareto front.
    pub fn nadir<T: Scalar>(&self) -> Vec<T> {
        let m = self.m;
        let v: Vec<f64> = match self.kind {
            ProblemKind::Dtlz1 => vec![0.5; m],
            ProblemKind::Dtlz2 => vec![1.0; m],
            ProblemKind::Dtlz5 => {
                // each objective is monotone in the single free angle
                let a = dtlz5_front_point(m, 0.0);
                let b = dtlz5_front_point(m, 0.5 * PI);
                a.iter().zip(&b).map(|(x, y)| x.max(*y)).collect()
            }
            ProblemKind::Dtlz7 => {
                let mut v = vec![DTLZ7_FRONT_INTERVALS[1].1; m - 1];
                v.push(2.0 * m as f64);
                v
            }
            ProblemKind::Zdt2 => vec![1.0, 1.0],
        };
        v.into_iter().map(T::lit).collect()
    }

    /// `count` points on the analytic Pareto front, deterministic in `seed`.
    pub fn sample_true_front<T: Scalar>(&self, count: usize, seed: u64) -> Result<ReferenceFront<T>> {
        if count == 0 {
            return Err(invalid("front sample count must be at least 1"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = self.m;
        let rows: Vec<Vec<f64>> = match self.kind {
            ProblemKind::Dtlz1 => (0..count)
                .map(|_| {
                    let w: Vec<f64> = (0..m)
                        .map(|_| -(1.0 - rng.random::<f64>()).ln())
                        .collect();
                    let s: f64 = w.iter().sum();
                    w.iter().map(|v| 0.5 * v / s).collect()
                })
                .collect(),
            ProblemKind::Dtlz2 => (0..count)
                .map(|_| loop {
                    let w: Vec<f64> = (0..m)
                        .map(|_| rng.sample::<f64, _>(StandardNormal).abs())
                        .collect();
                    let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
                    if norm > 1e-12 {
                        break w.iter().map(|v| v / norm).collect();
                    }
                })
                .collect(),
            ProblemKind::Dtlz5 => (0..count)
                .map(|_| dtlz5_front_point(m, 0.5 * PI * rng.random::<f64>()))
                .collect(),
            ProblemKind::Dtlz7 => dtlz7_front(m, count, &mut rng),
            ProblemKind::Zdt2 => (0..count)
                .map(|_| {
                    let f1 = rng.random::<f64>();
                    vec![f1, 1.0 - f1 * f1]
                })
                .collect(),
        };
        ReferenceFront::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(T::lit).collect())
                .collect(),
        )
    }

    fn dtlz1<T: Scalar>(&self, x: &[T], want_jac: bool) -> (Vec<T>, Option<Matrix<T>>) {
        let m = self.m;
        let half = T::lit(0.5);
        let hundred = T::lit(100.0);
        let twenty_pi = T::lit(20.0 * PI);
        let dist = &x[m - 1..];
        let g = hundred
            * (T::from_usize_lossy(dist.len())
                + dist
                    .iter()
                    .map(|&v| {
                        let d = v - half;
                        d * d - (twenty_pi * d).cos()
                    })
                    .sum::<T>());
        let r = T::one() + g;
        let pos = &x[..m - 1];
        let shape: Vec<T> = (0..m).map(|i| linear_shape(pos, i, None)).collect();
        let f: Vec<T> = shape.iter().map(|&l| half * r * l).collect();
        if !want_jac {
            return (f, None);
        }
        let mut jac = Matrix::zeros(m, self.n);
        for i in 0..m {
            for j in 0..m - 1 {
                jac[(i, j)] = half * r * linear_shape(pos, i, Some(j));
            }
            for (d, &v) in dist.iter().enumerate() {
                let c = v - half;
                let dg = hundred * (T::lit(2.0) * c + twenty_pi * (twenty_pi * c).sin());
                jac[(i, m - 1 + d)] = half * shape[i] * dg;
            }
        }
        (f, Some(jac))
    }

    /// DTLZ2 and DTLZ5 share `f_i = (1 + g) P_i(theta)` with different angle maps.
    fn spherical<T: Scalar>(&self, x: &[T], want_jac: bool) -> (Vec<T>, Option<Matrix<T>>) {
        let m = self.m;
        let half = T::lit(0.5);
        let half_pi = T::FRAC_PI_2();
        let dist = &x[m - 1..];
        let g: T = dist.iter().map(|&v| (v - half) * (v - half)).sum();
        let r = T::one() + g;
        // theta_j, d theta_j / d x_j, d theta_j / d g
        let mut theta = Vec::with_capacity(m - 1);
        let mut dtheta_dx = Vec::with_capacity(m - 1);
        let mut dtheta_dg = Vec::with_capacity(m - 1);
        for (j, &xj) in x[..m - 1].iter().enumerate() {
            if self.kind == ProblemKind::Dtlz2 || j == 0 {
                theta.push(half_pi * xj);
                dtheta_dx.push(half_pi);
                dtheta_dg.push(T::zero());
            } else {
                let quarter_pi = T::FRAC_PI_4();
                let two = T::lit(2.0);
                theta.push(quarter_pi / r * (T::one() + two * g * xj));
                dtheta_dx.push(half_pi * g / r);
                dtheta_dg.push(quarter_pi * (two * xj - T::one()) / (r * r));
            }
        }
        let shape: Vec<T> = (0..m).map(|i| angular_shape(&theta, i, None)).collect();
        let f: Vec<T> = shape.iter().map(|&p| r * p).collect();
        if !want_jac {
            return (f, None);
        }
        let mut jac = Matrix::zeros(m, self.n);
        for i in 0..m {
            let mut df_dg = shape[i];
            for j in 0..m - 1 {
                let dp = angular_shape(&theta, i, Some(j));
                jac[(i, j)] = r * dp * dtheta_dx[j];
                df_dg += r * dp * dtheta_dg[j];
            }
            for (d, &v) in dist.iter().enumerate() {
                jac[(i, m - 1 + d)] = df_dg * T::lit(2.0) * (v - half);
            }
        }
        (f, Some(jac))
    }

    fn dtlz7<T: Scalar>(&self, x: &[T], want_jac: bool) -> (Vec<T>, Option<Matrix<T>>) {
        let m = self.m;
        let k = T::from_usize_lossy(self.distance_count());
        let nine = T::lit(9.0);
        let three_pi = T::lit(3.0 * PI);
        let g = T::one() + nine / k * x[m - 1..].iter().copied().sum::<T>();
        let r = T::one() + g;
        let mut f: Vec<T> = x[..m - 1].to_vec();
        let h = T::from_usize_lossy(m)
            - f.iter()
                .map(|&fi| fi / r * (T::one() + (three_pi * fi).sin()))
                .sum::<T>();
        f.push(r * h);
        if !want_jac {
            return (f, None);
        }
        let mut jac = Matrix::zeros(m, self.n);
        for i in 0..m - 1 {
            let xi = x[i];
            jac[(i, i)] = T::one();
            jac[(m - 1, i)] = -(T::one() + (three_pi * xi).sin() + three_pi * xi * (three_pi * xi).cos());
        }
        // d[(1+g) h]/dg = m
        let d_last = nine / k * T::from_usize_lossy(m);
        for d in m - 1..self.n {
            jac[(m - 1, d)] = d_last;
        }
        (f, Some(jac))
    }
}

/// Result of [`Problem::finite_diff_jacobian`].
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteDiffJacobian<T> {
    pub matrix: Matrix<T>,
    /// Columns evaluated with a one-sided difference at the box boundary.
    pub one_sided: Vec<bool>,
}

fn zdt2<T: Scalar>(x: &[T], want_jac: bool) -> (Vec<T>, Option<Matrix<T>>) {
    let n = x.len();
    let c = T::lit(9.0) / T::from_usize_lossy(n - 1);
    let g = T::one() + c * x[1..].iter().copied().sum::<T>();
    let x1 = x[0];
    let f = vec![x1, g - x1 * x1 / g];
    if !want_jac {
        return (f, None);
    }
    let mut jac = Matrix::zeros(2, n);
    jac[(0, 0)] = T::one();
    jac[(1, 0)] = -T::lit(2.0) * x1 / g;
    let tail = c * (T::one() + x1 * x1 / (g * g));
    for j in 1..n {
        jac[(1, j)] = tail;
    }
    (f, Some(jac))
}

/// DTLZ1 shape `prod_{j<t} x_j * (1 - x_t)` with `t = m - 1 - i`; with
/// `wrt = Some(j)` returns its partial derivative in `x_j`.
fn linear_shape<T: Scalar>(pos: &[T], i: usize, wrt: Option<usize>) -> T {
    let m = pos.len() + 1;
    let t = m - 1 - i;
    let mut v = T::one();
    for (j, &xj) in pos.iter().enumerate().take(t) {
        v *= if wrt == Some(j) { T::one() } else { xj };
    }
    if i > 0 {
        v *= if wrt == Some(t) { -T::one() } else { T::one() - pos[t] };
    }
    if let Some(j) = wrt {
        if j > t || (j == t && i == 0) {
            return T::zero();
        }
    }
    v
}

/// Spherical shape `prod_{j<t} cos(theta_j) * sin(theta_t)`, or its partial
/// derivative in `theta_j` when `wrt = Some(j)`.
fn angular_shape<T: Scalar>(theta: &[T], i: usize, wrt: Option<usize>) -> T {
    let m = theta.len() + 1;
    let t = m - 1 - i;
    if let Some(j) = wrt {
        if j > t || (j == t && i == 0) {
            return T::zero();
        }
    }
    let mut v = T::one();
    for (j, &th) in theta.iter().enumerate().take(t) {
        v *= if wrt == Some(j) { -th.sin() } else { th.cos() };
    }
    if i > 0 {
        v *= if wrt == Some(t) { theta[t].cos() } else { theta[t].sin() };
    }
    v
}

fn dtlz5_front_point(m: usize, theta0: f64) -> Vec<f64> {
    let mut theta = vec![0.25 * PI; m - 1];
    theta[0] = theta0;
    (0..m).map(|i| angular_shape(&theta, i, None)).collect()
}

fn dtlz7_front<R: Rng>(m: usize, count: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let [(a0, a1), (b0, b1)] = DTLZ7_FRONT_INTERVALS;
    let len_a = a1 - a0;
    let total = len_a + (b1 - b0);
    let mut batch = 2 * count + 16;
    loop {
        let rows: Vec<Vec<f64>> = (0..batch)
            .map(|_| {
                let mut f: Vec<f64> = (0..m - 1)
                    .map(|_| {
                        let u = rng.random::<f64>() * total;
                        if u < len_a {
                            a0 + u
                        } else {
                            b0 + (u - len_a)
                        }
                    })
                    .collect();
                let phi: f64 = f.iter().map(|&t| t * (1.0 + (3.0 * PI * t).sin())).sum();
                f.push(2.0 * m as f64 - phi);
                f
            })
            .collect();
        let points: Vec<ObjectivePoint<f64>> = rows
            .into_iter()
            .map(|r| ObjectivePoint::new(r).expect("finite front point"))
            .collect();
        let keep = non_dominated_indices(&points);
        if keep.len() >= count {
            return keep
                .into_iter()
                .take(count)
                .map(|i| points[i].values().to_vec())
                .collect();
        }
        batch *= 2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn all_problems() -> Vec<Problem> {
        vec![
            Problem::new(ProblemKind::Dtlz1, 3).unwrap(),
            Problem::new(ProblemKind::Dtlz2, 3).unwrap(),
            Problem::new(ProblemKind::Dtlz5, 3).unwrap(),
            Problem::new(ProblemKind::Dtlz7, 3).unwrap(),
            Problem::new(ProblemKind::Zdt2, 2).unwrap(),
        ]
    }

    #[test]
    fn registry_names() {
        for kind in ProblemKind::ALL {
            assert_eq!(kind.name().parse::<ProblemKind>().unwrap(), kind);
        }
        assert_eq!("DTLZ2".parse::<ProblemKind>().unwrap(), ProblemKind::Dtlz2);
        assert!(matches!(
            Problem::from_name("dtlz9", 3, None),
            Err(Error::UnknownProblem(_))
        ));
        assert!(Problem::from_name("zdt2", 3, None).is_err());
        assert!(Problem::from_name("dtlz2", 3, Some(2)).is_err());
        let p = Problem::from_name("dtlz1", 3, None).unwrap();
        assert_eq!(p.num_variables(), 7);
    }

    #[test]
    fn dtlz2_on_unit_sphere() {
        let p = Problem::new(ProblemKind::Dtlz2, 3).unwrap();
        let x = p.pareto_optimal_decision(&[0.5, 0.5]).unwrap();
        let f = p.evaluate(&x).unwrap();
        let s: f64 = f.values().iter().map(|v| v * v).sum();
        assert_abs_diff_eq!(s, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn zdt2_at_origin() {
        let p = Problem::new(ProblemKind::Zdt2, 2).unwrap();
        let x = DecisionPoint::in_unit_box(vec![0.0; 30]).unwrap();
        assert_eq!(p.evaluate(&x).unwrap().values(), &[0.0, 1.0]);
    }

    #[test]
    fn dtlz1_sum_is_half_on_front() {
        let p = Problem::new(ProblemKind::Dtlz1, 3).unwrap();
        let x = p.pareto_optimal_decision(&[0.3, 0.8]).unwrap();
        let s: f64 = p.evaluate(&x).unwrap().values().iter().sum();
        assert_abs_diff_eq!(s, 0.5, epsilon = 1e-14);
    }

    #[test]
    fn out_of_bounds_rejected() {
        let p = Problem::new(ProblemKind::Dtlz2, 3).unwrap();
        let mut x = vec![0.5; 12];
        x[4] = 1.5;
        assert!(matches!(
            p.evaluate_values(&x),
            Err(Error::OutOfBounds { index: 4, .. })
        ));
        assert!(p.evaluate_values(&[0.5; 3]).is_err());
    }

    #[test]
    fn zdt2_first_row_is_unit() {
        let p = Problem::new(ProblemKind::Zdt2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let x = p.random_decision(&mut rng);
            let j = p.jacobian(&x).unwrap();
            assert_eq!(j[(0, 0)], 1.0);
            assert!(j.row(0)[1..].iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn dtlz2_distance_columns_vanish_at_half() {
        let p = Problem::new(ProblemKind::Dtlz2, 3).unwrap();
        let x = p.pareto_optimal_decision(&[0.2, 0.9]).unwrap();
        let j = p.jacobian(&x).unwrap();
        for i in 0..3 {
            assert!(j.row(i)[2..].iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn jacobians_match_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for p in all_problems() {
            for _ in 0..20 {
                let x: Vec<f64> = (0..p.num_variables())
                    .map(|_| rng.random_range(0.01..0.99))
                    .collect();
                let x = DecisionPoint::in_unit_box(x).unwrap();
                let a = p.jacobian(&x).unwrap();
                let fd = p.finite_diff_jacobian(&x, 1e-6).unwrap();
                assert!(fd.one_sided.iter().all(|&b| !b));
                let err = a.max_abs_diff(&fd.matrix).unwrap();
                assert!(err <= 1e-4, "{}: error {err}", p.name());
            }
        }
    }

    #[test]
    fn finite_differences_exact_for_linear_objective() {
        // DTLZ7 and ZDT2 first objectives are x_1: any step is exact
        let p = Problem::new(ProblemKind::Dtlz7, 3).unwrap();
        let x = DecisionPoint::in_unit_box(vec![0.4; p.num_variables()]).unwrap();
        for h in [1e-3, 0.1, 0.3] {
            let fd = p.finite_diff_jacobian(&x, h).unwrap();
            assert_abs_diff_eq!(fd.matrix[(0, 0)], 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(fd.matrix[(0, 1)], 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn finite_differences_flag_boundary_columns() {
        let p = Problem::new(ProblemKind::Zdt2, 2).unwrap();
        let mut x = vec![0.5; 30];
        x[0] = 0.0;
        x[3] = 1.0;
        let x = DecisionPoint::in_unit_box(x).unwrap();
        let fd = p.finite_diff_jacobian(&x, 1e-6).unwrap();
        assert!(fd.one_sided[0] && fd.one_sided[3] && !fd.one_sided[1]);
        let a = p.jacobian(&x).unwrap();
        assert!(a.max_abs_diff(&fd.matrix).unwrap() < 1e-4);
        assert!(p.finite_diff_jacobian(&x, 0.0).is_err());
        assert!(p.finite_diff_jacobian(&x, -1e-3).is_err());
    }

    #[test]
    fn front_identities() {
        let d2 = Problem::new(ProblemKind::Dtlz2, 3).unwrap();
        for pt in d2.sample_true_front::<f64>(200, 1).unwrap().points() {
            let s: f64 = pt.values().iter().map(|v| v * v).sum();
            assert_abs_diff_eq!(s, 1.0, epsilon = 1e-12);
        }
        let z = Problem::new(ProblemKind::Zdt2, 2).unwrap();
        for pt in z.sample_true_front::<f64>(200, 1).unwrap().points() {
            let v = pt.values();
            assert_abs_diff_eq!(v[1], 1.0 - v[0] * v[0], epsilon = 1e-12);
        }
        let d1 = Problem::new(ProblemKind::Dtlz1, 4).unwrap();
        for pt in d1.sample_true_front::<f64>(200, 1).unwrap().points() {
            assert_abs_diff_eq!(pt.values().iter().sum::<f64>(), 0.5, epsilon = 1e-12);
        }
        let d5 = Problem::new(ProblemKind::Dtlz5, 3).unwrap();
        for pt in d5.sample_true_front::<f64>(200, 1).unwrap().points() {
            let s: f64 = pt.values().iter().map(|v| v * v).sum();
            assert_abs_diff_eq!(s, 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn fronts_are_mutually_non_dominated_and_seeded() {
        for p in all_problems() {
            let front = p.sample_true_front::<f64>(150, 9).unwrap();
            assert_eq!(front.len(), 150);
            assert_eq!(non_dominated_indices(&front).len(), 150, "{}", p.name());
            assert_eq!(front, p.sample_true_front::<f64>(150, 9).unwrap());
            let nadir = p.nadir::<f64>();
            for pt in front.points() {
                for (v, n) in pt.values().iter().zip(&nadir) {
                    assert!(*v <= *n + 1e-12, "{}: {v} > nadir {n}", p.name());
                }
            }
        }
        assert!(Problem::new(ProblemKind::Dtlz2, 3)
            .unwrap()
            .sample_true_front::<f64>(0, 1)
            .is_err());
    }

    #[test]
    fn pareto_decisions_land_on_sampled_front_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = Problem::new(ProblemKind::Dtlz7, 3).unwrap();
        for _ in 0..50 {
            let pos: Vec<f64> = (0..2).map(|_| rng.random::<f64>()).collect();
            let f = p.evaluate(&p.pareto_optimal_decision(&pos).unwrap()).unwrap();
            let phi: f64 = pos.iter().map(|&t| t * (1.0 + (3.0 * PI * t).sin())).sum();
            assert_abs_diff_eq!(f.values()[2], 6.0 - phi, epsilon = 1e-12);
        }
    }

    #[test]
    fn dtlz7_interval_constants() {
        // brute-force the running-maximum structure of t (1 + sin 3 pi t)
        let phi = |t: f64| t * (1.0 + (3.0 * PI * t).sin());
        let steps = 2_000_000;
        let mut best = f64::NEG_INFINITY;
        let mut inside = false;
        let mut edges = Vec::new();
        for s in 0..=steps {
            let t = s as f64 / steps as f64;
            let v = phi(t);
            let nd = v > best;
            if nd != inside {
                edges.push(t);
                inside = nd;
            }
            best = best.max(v);
        }
        assert_eq!(edges.len(), 4);
        let expected = [0.0, DTLZ7_FRONT_INTERVALS[0].1, DTLZ7_FRONT_INTERVALS[1].0, DTLZ7_FRONT_INTERVALS[1].1];
        for (e, x) in edges.iter().zip(expected) {
            assert!((e - x).abs() < 2e-6, "{e} vs {x}");
        }
    }

    #[test]
    fn evaluates_in_f32() {
        let p = Problem::new(ProblemKind::Dtlz2, 3).unwrap();
        let x = p.pareto_optimal_decision(&[0.5f32, 0.5]).unwrap();
        let s: f32 = p.evaluate(&x).unwrap().values().iter().map(|v| v * v).sum();
        assert!((s - 1.0).abs() < 1e-6);
        let j = p.jacobian(&x).unwrap();
        assert_eq!(j.rows(), 3);
    }
}
