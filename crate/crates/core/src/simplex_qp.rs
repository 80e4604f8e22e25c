//! Minimum-norm convex combination of objective gradients.
//!
//! For a Jacobian `J` (rows are gradients) the KKT residual of a point is
//! `q = J^T alpha` where `alpha` minimises `alpha^T G alpha` over the unit
//! simplex, `G = J J^T`. A zero residual certifies first-order Pareto
//! stationarity.
//!
//! The solver works on the `m x m` Gram matrix: projected gradient with exact
//! Euclidean projection onto the simplex, started from the barycentre, with an
//! exact solve restricted to the current support every few iterations.
//! Termination is certified by the Frank-Wolfe gap
//! `2 (alpha^T G alpha - min_j (G alpha)_j)`, which bounds the distance of the
//! current value to the global minimum.

use crate::error::{invalid, Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{dot, Scalar};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 10_000;

/// Face refinement is attempted every this many projected-gradient steps.
const POLISH_EVERY: usize = 8;

/// Symmetric PSD matrix `G_ij = <grad f_i, grad f_j>`.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix<T>(Matrix<T>);

impl<T: Scalar> GramMatrix<T> {
    /// Wraps an arbitrary square matrix, symmetrising it as `(G + G^T) / 2`.
    pub fn from_matrix(g: Matrix<T>) -> Result<Self> {
        if g.rows() != g.cols() {
            return Err(Error::DimensionMismatch {
                context: "gram matrix",
                expected: g.rows(),
                found: g.cols(),
            });
        }
        if !g.is_finite() {
            return Err(Error::NonFinite("gram matrix"));
        }
        let half = T::lit(0.5);
        let mut s = g.clone();
        for i in 0..g.rows() {
            for j in 0..g.cols() {
                s[(i, j)] = half * (g[(i, j)] + g[(j, i)]);
            }
        }
        Ok(Self(s))
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    /// `alpha^T G alpha`
    pub fn quadratic_form(&self, alpha: &[T]) -> T {
        dot(alpha, &self.0.mul_vec(alpha))
    }
}

/// Gram matrix `J J^T` of a Jacobian.
pub fn gram<T: Scalar>(jacobian: &Matrix<T>) -> GramMatrix<T> {
    let m = jacobian.rows();
    let mut g = Matrix::zeros(m, m);
    for i in 0..m {
        for j in i..m {
            let v = dot(jacobian.row(i), jacobian.row(j));
            g[(i, j)] = v;
            g[(j, i)] = v;
        }
    }
    GramMatrix(g)
}

/// Point of the unit simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexWeights<T>(Vec<T>);

impl<T: Scalar> SimplexWeights<T> {
    pub fn as_slice(&self) -> &[T] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<T> {
        self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QpSolution<T> {
    pub weights: SimplexWeights<T>,
    /// `||q||^2 = alpha^T G alpha`, clamped at zero.
    pub residual_norm_sq: T,
    /// Frank-Wolfe gap at the returned weights.
    pub gap: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Euclidean projection onto `{a : a_i >= 0, sum a_i = 1}`.
pub fn project_onto_simplex<T: Scalar>(v: &[T]) -> Vec<T> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).expect("finite input"));
    let mut cumsum = T::zero();
    let mut tau = T::zero();
    for (j, &uj) in u.iter().enumerate() {
        cumsum += uj;
        let candidate = (cumsum - T::one()) / T::from_usize_lossy(j + 1);
        if uj - candidate > T::zero() {
            tau = candidate;
        }
    }
    v.iter().map(|&x| (x - tau).max(T::zero())).collect()
}

/// Frank-Wolfe gap `2 (a^T G a - min_j (G a)_j)`; an upper bound on
/// `a^T G a - min_simplex`.
pub fn stationarity_gap<T: Scalar>(g: &GramMatrix<T>, alpha: &[T]) -> T {
    let ga = g.0.mul_vec(alpha);
    let value = dot(alpha, &ga);
    let min = ga.iter().copied().fold(T::infinity(), T::min);
    T::lit(2.0) * (value - min)
}

/// Solves `min a^T G a` over the unit simplex from the barycentre.
///
/// `tol` is relative to `max(1, max_i G_ii)`.
pub fn solve_simplex_qp<T: Scalar>(
    g: &GramMatrix<T>,
    tol: T,
    max_iter: usize,
) -> Result<QpSolution<T>> {
    let m = g.dim();
    if m == 0 {
        return Err(Error::Empty("gram matrix"));
    }
    let start = vec![T::one() / T::from_usize_lossy(m); m];
    solve_simplex_qp_from(g, &start, tol, max_iter)
}

/// Same as [`solve_simplex_qp`] from an explicit starting point (projected
/// onto the simplex first).
pub fn solve_simplex_qp_from<T: Scalar>(
    g: &GramMatrix<T>,
    start: &[T],
    tol: T,
    max_iter: usize,
) -> Result<QpSolution<T>> {
    let m = g.dim();
    if m == 0 {
        return Err(Error::Empty("gram matrix"));
    }
    if start.len() != m {
        return Err(Error::DimensionMismatch {
            context: "qp start",
            expected: m,
            found: start.len(),
        });
    }
    if !(tol > T::zero()) {
        return Err(invalid("qp tolerance must be positive"));
    }
    if !g.0.is_finite() || start.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("qp input"));
    }
    let gm = &g.0;
    let scale = (0..m).map(|i| gm[(i, i)]).fold(T::one(), T::max);
    let tol_abs = tol * scale;
    let lipschitz = (0..m)
        .map(|i| gm.row(i).iter().map(|v| v.abs()).sum::<T>())
        .fold(T::zero(), T::max);

    let mut alpha = project_onto_simplex(start);
    let finish = |alpha: Vec<T>, iterations: usize, converged: bool| {
        let gap = stationarity_gap(g, &alpha);
        QpSolution {
            residual_norm_sq: g.quadratic_form(&alpha).max(T::zero()),
            weights: SimplexWeights(alpha),
            gap,
            iterations,
            converged,
        }
    };
    if lipschitz == T::zero() {
        return Ok(finish(alpha, 0, true));
    }
    let step = T::one() / lipschitz;

    for it in 0..max_iter {
        if stationarity_gap(g, &alpha) <= tol_abs {
            return Ok(finish(alpha, it, true));
        }
        if it % POLISH_EVERY == 0 {
            if let Some(better) = polish_on_support(g, &alpha) {
                alpha = better;
                if stationarity_gap(g, &alpha) <= tol_abs {
                    return Ok(finish(alpha, it, true));
                }
            }
        }
        let ga = gm.mul_vec(&alpha);
        let trial: Vec<T> = alpha.iter().zip(&ga).map(|(&a, &d)| a - step * d).collect();
        alpha = project_onto_simplex(&trial);
    }
    let converged = stationarity_gap(g, &alpha) <= tol_abs;
    Ok(finish(alpha, max_iter, converged))
}

/// Minimiser of `a^T G a` on the affine hull of the current support, kept
/// only if it does not increase the objective. An infeasible minimiser
/// shrinks the support and the solve is repeated.
///
/// Affinely dependent gradients on the support make the bordered system
/// singular. The weights are then shifted along the dependency (which
/// leaves `q` unchanged) until one of them vanishes, and the smaller
/// support is tried again.
fn polish_on_support<T: Scalar>(g: &GramMatrix<T>, alpha: &[T]) -> Option<Vec<T>> {
    let mut current = alpha.to_vec();
    loop {
        let support: Vec<usize> = (0..current.len()).filter(|&i| current[i] > T::zero()).collect();
        let s = support.len();
        if s < 2 {
            return (g.quadratic_form(&current) <= g.quadratic_form(alpha)).then_some(current);
        }
        // [G_SS 1; 1^T 0] [a; -mu] = [0; 1]
        let dim = s + 1;
        let mut a = Matrix::zeros(dim, dim + 1);
        for (r, &i) in support.iter().enumerate() {
            for (c, &j) in support.iter().enumerate() {
                a[(r, c)] = g.0[(i, j)];
            }
            a[(r, s)] = T::one();
            a[(s, r)] = T::one();
        }
        a[(s, dim)] = T::one();
        match solve_augmented(a) {
            Elimination::Solution(sol) => {
                if sol[..s].iter().any(|&v| v < T::zero()) {
                    // the objective decreases along the segment towards the
                    // affine minimiser; stop where the first weight vanishes
                    let (leave, theta) = support
                        .iter()
                        .zip(&sol[..s])
                        .filter(|(&i, &v)| v < current[i])
                        .map(|(&i, &v)| (i, current[i] / (current[i] - v)))
                        .min_by(|x, y| x.1.partial_cmp(&y.1).expect("finite"))?;
                    let theta = theta.min(T::one());
                    for (&i, &v) in support.iter().zip(&sol[..s]) {
                        current[i] = (current[i] + theta * (v - current[i])).max(T::zero());
                    }
                    current[leave] = T::zero();
                    let total: T = current.iter().copied().sum();
                    if !(total > T::zero()) {
                        return None;
                    }
                    current.iter_mut().for_each(|v| *v /= total);
                    continue;
                }
                let mut out = vec![T::zero(); current.len()];
                for (r, &i) in support.iter().enumerate() {
                    out[i] = sol[r].max(T::zero());
                }
                let total: T = out.iter().copied().sum();
                if !(total > T::zero()) {
                    return None;
                }
                out.iter_mut().for_each(|v| *v /= total);
                return (g.quadratic_form(&out) <= g.quadratic_form(alpha)).then_some(out);
            }
            Elimination::Dependent(null) => {
                let d = &null[..s];
                if d.iter().all(|&v| v == T::zero()) {
                    return None;
                }
                // move so that some weight decreases; the first to reach zero leaves
                let sign = if d.iter().any(|&v| v < T::zero()) { T::one() } else { -T::one() };
                let (leave, step) = support
                    .iter()
                    .zip(d)
                    .filter(|(_, &v)| sign * v < T::zero())
                    .map(|(&i, &v)| (i, current[i] / (-sign * v)))
                    .min_by(|x, y| x.1.partial_cmp(&y.1).expect("finite"))?;
                for (&i, &v) in support.iter().zip(d) {
                    current[i] = (current[i] + step * sign * v).max(T::zero());
                }
                current[leave] = T::zero();
                let total: T = current.iter().copied().sum();
                if !(total > T::zero()) {
                    return None;
                }
                current.iter_mut().for_each(|v| *v /= total);
            }
        }
    }
}

enum Elimination<T> {
    Solution(Vec<T>),
    /// Coefficients of a dependency among the leading columns.
    Dependent(Vec<T>),
}

/// Gaussian elimination with partial pivoting on an `n x (n+1)` augmented
/// matrix. A numerically zero pivot yields a null vector of the coefficient
/// matrix instead of a solution.
fn solve_augmented<T: Scalar>(mut a: Matrix<T>) -> Elimination<T> {
    let n = a.rows();
    let norm = a
        .as_slice()
        .iter()
        .fold(T::zero(), |acc, v| acc.max(v.abs()));
    let eps = T::epsilon() * T::lit(64.0) * norm.max(T::one());
    let back_substitute = |a: &Matrix<T>, upto: usize, rhs: &dyn Fn(usize) -> T, x: &mut [T]| {
        for r in (0..upto).rev() {
            let mut acc = rhs(r);
            for c in r + 1..upto {
                acc -= a[(r, c)] * x[c];
            }
            x[r] = acc / a[(r, r)];
        }
    };
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[(i, col)]
                    .abs()
                    .partial_cmp(&a[(j, col)].abs())
                    .expect("finite")
            })
            .expect("non-empty range");
        if a[(pivot, col)].abs() <= eps {
            let mut x = vec![T::zero(); n];
            x[col] = T::one();
            back_substitute(&a, col, &|r| -a[(r, col)], &mut x);
            return Elimination::Dependent(x);
        }
        if pivot != col {
            for c in 0..=n {
                let tmp = a[(col, c)];
                a[(col, c)] = a[(pivot, c)];
                a[(pivot, c)] = tmp;
            }
        }
        for r in col + 1..n {
            let factor = a[(r, col)] / a[(col, col)];
            if factor != T::zero() {
                for c in col..=n {
                    let v = a[(col, c)];
                    a[(r, c)] -= factor * v;
                }
            }
        }
    }
    let mut x = vec![T::zero(); n];
    back_substitute(&a, n, &|r| a[(r, n)], &mut x);
    if x.iter().all(|v| v.is_finite()) {
        Elimination::Solution(x)
    } else {
        Elimination::Dependent(vec![T::zero(); n])
    }
}

/// Exact minimiser of `||a g1 + (1 - a) g2||^2` over `a in [0, 1]`.
///
/// Identical gradients give `a = 0.5`.
pub fn closed_form_m2<T: Scalar>(g1: &[T], g2: &[T]) -> Result<QpSolution<T>> {
    if g1.len() != g2.len() {
        return Err(Error::DimensionMismatch {
            context: "closed form gradients",
            expected: g1.len(),
            found: g2.len(),
        });
    }
    let diff: Vec<T> = g1.iter().zip(g2).map(|(&a, &b)| a - b).collect();
    let denom = dot(&diff, &diff);
    let a = if denom == T::zero() {
        T::lit(0.5)
    } else {
        // <g2 - g1, g2> / ||g1 - g2||^2
        (-dot(&diff, g2) / denom).max(T::zero()).min(T::one())
    };
    let b = T::one() - a;
    let q: Vec<T> = g1.iter().zip(g2).map(|(&x, &y)| a * x + b * y).collect();
    Ok(QpSolution {
        weights: SimplexWeights(vec![a, b]),
        residual_norm_sq: dot(&q, &q),
        gap: T::zero(),
        iterations: 0,
        converged: true,
    })
}

/// Solves the QP for a Jacobian and returns the solution with `q = J^T alpha`.
pub fn kkt_residual<T: Scalar>(
    jacobian: &Matrix<T>,
    tol: T,
    max_iter: usize,
) -> Result<(QpSolution<T>, Vec<T>)> {
    if !jacobian.is_finite() {
        return Err(Error::NonFinite("jacobian"));
    }
    let sol = solve_simplex_qp(&gram(jacobian), tol, max_iter)?;
    let q = jacobian.transpose_mul_vec(sol.weights.as_slice());
    Ok((sol, q))
}

/// `||q(x)||^2` for the given Jacobian.
pub fn q_norm_sq<T: Scalar>(jacobian: &Matrix<T>, tol: T) -> Result<T> {
    Ok(kkt_residual(jacobian, tol, DEFAULT_MAX_ITER)?.0.residual_norm_sq)
}

/// True when `||q(x)||^2 < eps`.
pub fn is_eps_closed<T: Scalar>(jacobian: &Matrix<T>, eps: T) -> Result<bool> {
    if !(eps > T::zero()) {
        return Err(invalid("eps must be positive"));
    }
    Ok(q_norm_sq(jacobian, T::lit(DEFAULT_TOL))? < eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TOL: f64 = DEFAULT_TOL;

    fn gm(rows: &[Vec<f64>]) -> GramMatrix<f64> {
        GramMatrix::from_matrix(Matrix::from_rows(rows).unwrap()).unwrap()
    }

    fn random_jacobian(rng: &mut ChaCha8Rng, m: usize, n: usize) -> Matrix<f64> {
        let data = (0..m * n).map(|_| rng.random_range(-1.0..1.0)).collect();
        Matrix::from_row_major(m, n, data).unwrap()
    }

    #[test]
    fn gram_examples() {
        let g = gram(&Matrix::<f64>::identity(2));
        assert_eq!(g.matrix(), &Matrix::identity(2));
        let j = Matrix::from_rows(&[vec![1.0, 2.0], vec![1.0, 2.0]]).unwrap();
        assert_eq!(gram(&j).matrix().as_slice(), &[5.0; 4]);
    }

    #[test]
    fn gram_matches_double_loop() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let j = random_jacobian(&mut rng, 4, 7);
        let g = gram(&j);
        for a in 0..4 {
            for b in 0..4 {
                let mut s = 0.0;
                for c in 0..7 {
                    s += j[(a, c)] * j[(b, c)];
                }
                assert_abs_diff_eq!(g.matrix()[(a, b)], s, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn solve_examples() {
        let s = solve_simplex_qp(&gm(&[vec![1.0, 0.0], vec![0.0, 1.0]]), TOL, 10_000).unwrap();
        assert!(s.converged);
        assert_abs_diff_eq!(s.weights.as_slice()[0], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s.residual_norm_sq, 0.5, epsilon = 1e-12);

        let s = solve_simplex_qp(&gm(&[vec![1.0, -1.0], vec![-1.0, 1.0]]), TOL, 10_000).unwrap();
        assert!(s.converged);
        assert_abs_diff_eq!(s.weights.as_slice()[1], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(s.residual_norm_sq, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn non_finite_gram_rejected() {
        let m = Matrix::from_rows(&[vec![1.0, f64::NAN], vec![0.0, 1.0]]).unwrap();
        assert!(GramMatrix::from_matrix(m).is_err());
    }

    #[test]
    fn asymmetric_input_is_symmetrised() {
        let g = gm(&[vec![2.0, 1.0], vec![0.0, 2.0]]);
        assert_eq!(g.matrix()[(0, 1)], 0.5);
        assert_eq!(g.matrix()[(1, 0)], 0.5);
    }

    #[test]
    fn closed_form_examples() {
        let s = closed_form_m2(&[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(s.weights.as_slice()[0], 0.5);
        assert_eq!(s.residual_norm_sq, 0.5);
        let s = closed_form_m2(&[2.0, 0.0], &[2.0, 0.0]).unwrap();
        assert_eq!(s.residual_norm_sq, 4.0);
        let s = closed_form_m2(&[1.0, 0.0], &[-3.0, 0.0]).unwrap();
        assert_eq!(s.weights.as_slice()[0], 0.75);
        assert_eq!(s.residual_norm_sq, 0.0);
    }

    #[test]
    fn q_norm_examples() {
        assert_eq!(q_norm_sq(&Matrix::<f64>::zeros(3, 5), TOL).unwrap(), 0.0);
        assert_abs_diff_eq!(q_norm_sq(&Matrix::<f64>::identity(2), TOL).unwrap(), 0.5, epsilon = 1e-12);
        assert!(is_eps_closed(&Matrix::<f64>::zeros(2, 2), 1e-9).unwrap());
        assert!(!is_eps_closed(&Matrix::<f64>::identity(2), 0.1).unwrap());
        assert!(is_eps_closed(&Matrix::<f64>::identity(2), 0.0).is_err());
    }

    #[test]
    fn m2_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let n = rng.random_range(1..6);
            let j = random_jacobian(&mut rng, 2, n);
            let exact = closed_form_m2(j.row(0), j.row(1)).unwrap().residual_norm_sq;
            let got = q_norm_sq(&j, TOL).unwrap();
            assert!((got - exact).abs() <= 1e-10, "{got} vs {exact}");
        }
    }

    /// Simplex grid search with a local refinement pass.
    fn grid_min(g: &GramMatrix<f64>) -> f64 {
        let m = g.dim();
        let steps = if m == 3 { 1000 } else { 100 };
        let mut best = (f64::INFINITY, vec![0.0; m]);
        let mut idx = vec![0usize; m - 1];
        loop {
            let used: usize = idx.iter().sum();
            if used <= steps {
                let mut a: Vec<f64> = idx.iter().map(|&i| i as f64 / steps as f64).collect();
                a.push((steps - used) as f64 / steps as f64);
                let v = g.quadratic_form(&a);
                if v < best.0 {
                    best = (v, a);
                }
            }
            let mut k = 0;
            loop {
                if k == m - 1 {
                    break;
                }
                idx[k] += 1;
                if idx[k] <= steps {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == m - 1 {
                break;
            }
        }
        // refine: pairwise mass transfers with shrinking step
        let (mut v, mut a) = best;
        let mut h = 1.0 / steps as f64;
        while h > 1e-12 {
            let mut improved = false;
            for i in 0..m {
                for j in 0..m {
                    if i == j || a[j] <= 0.0 {
                        continue;
                    }
                    let t = h.min(a[j]);
                    let mut b = a.clone();
                    b[i] += t;
                    b[j] -= t;
                    let w = g.quadratic_form(&b);
                    if w < v {
                        v = w;
                        a = b;
                        improved = true;
                    }
                }
            }
            if !improved {
                h *= 0.5;
            }
        }
        v
    }

    #[test]
    fn rank_deficient_gram_converges() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..500 {
            let m = rng.random_range(3..7);
            let n = rng.random_range(1..m);
            let g = gram(&random_jacobian(&mut rng, m, n));
            let s = solve_simplex_qp(&g, TOL, DEFAULT_MAX_ITER).unwrap();
            assert!(s.converged, "gap {:e} after {} iterations", s.gap, s.iterations);
        }
        // four affinely dependent gradients in the plane
        let j = Matrix::from_rows(&[
            vec![1.0, 1.0],
            vec![2.0, 1.0],
            vec![3.0, 1.0],
            vec![1.0, 2.0],
        ])
        .unwrap();
        let s = solve_simplex_qp(&gram(&j), TOL, DEFAULT_MAX_ITER).unwrap();
        assert!(s.converged);
        assert!((s.residual_norm_sq - 2.0).abs() < 1e-12);
    }

    #[test]
    fn m3_m4_match_grid_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for case in 0..20 {
            let m = 3 + case % 2;
            let n = rng.random_range(1..5);
            let j = random_jacobian(&mut rng, m, n);
            let g = gram(&j);
            let s = solve_simplex_qp(&g, TOL, DEFAULT_MAX_ITER).unwrap();
            let oracle = grid_min(&g);
            assert!((s.residual_norm_sq - oracle).abs() <= 1e-6, "{} vs {oracle}", s.residual_norm_sq);
            assert!(s.residual_norm_sq <= oracle + 1e-12);
        }
    }

    #[test]
    fn starts_agree_on_singular_gram() {
        // duplicated and collinear gradients make G singular
        let j = Matrix::from_rows(&[
            vec![1.0, 2.0, 0.0],
            vec![1.0, 2.0, 0.0],
            vec![-0.5, -1.0, 0.0],
            vec![0.0, 1.0, 1.0],
        ])
        .unwrap();
        let g = gram(&j);
        let mut values = Vec::new();
        for k in 0..4 {
            let mut start = vec![0.0; 4];
            start[k] = 1.0;
            values.push(solve_simplex_qp_from(&g, &start, TOL, DEFAULT_MAX_ITER).unwrap().residual_norm_sq);
        }
        values.push(solve_simplex_qp(&g, TOL, DEFAULT_MAX_ITER).unwrap().residual_norm_sq);
        let scale = 5.0;
        for v in &values {
            assert!((v - values[0]).abs() <= 2.0 * TOL * scale, "{values:?}");
        }
    }

    #[test]
    fn max_iter_reports_non_convergence() {
        let g = gm(&[vec![1.0, 0.999], vec![0.999, 1.0]]);
        let s = solve_simplex_qp_from(&g, &[1.0, 0.0], TOL, 0).unwrap();
        assert!(!s.converged);
        assert_eq!(s.iterations, 0);
    }

    #[test]
    fn projection_properties() {
        let p = project_onto_simplex(&[0.2, 0.2, 0.2]);
        assert_abs_diff_eq!(p.iter().sum::<f64>(), 1.0, epsilon = 1e-15);
        assert_eq!(project_onto_simplex(&[5.0, 0.0]), vec![1.0, 0.0]);
    }

    #[test]
    fn works_in_f32() {
        let j = Matrix::from_rows(&[vec![1.0f32, 0.0], vec![-3.0, 0.0]]).unwrap();
        let v = q_norm_sq(&j, 1e-6).unwrap();
        assert!(v.abs() < 1e-6);
    }

    fn jacobian_strategy() -> impl Strategy<Value = Matrix<f64>> {
        (2usize..6, 1usize..6).prop_flat_map(|(m, n)| {
            proptest::collection::vec(-3.0f64..3.0, m * n)
                .prop_map(move |d| Matrix::from_row_major(m, n, d).unwrap())
        })
    }

    proptest! {
        #[test]
        fn feasible_and_certified(j in jacobian_strategy()) {
            let g = gram(&j);
            let s = solve_simplex_qp(&g, TOL, DEFAULT_MAX_ITER).unwrap();
            let a = s.weights.as_slice();
            prop_assert!(a.iter().all(|&v| v >= 0.0));
            prop_assert!((a.iter().sum::<f64>() - 1.0).abs() <= 1e-10);
            prop_assert!(s.residual_norm_sq >= 0.0);
            let scale = (0..g.dim()).map(|i| g.matrix()[(i, i)]).fold(1.0, f64::max);
            // first-order condition: (G a)_j >= a^T G a - tol for every j
            let ga = g.matrix().mul_vec(a);
            let v = g.quadratic_form(a);
            for x in ga {
                prop_assert!(x >= v - 1e-9 * scale);
            }
        }

        #[test]
        fn scale_covariance(j in jacobian_strategy()) {
            let base = q_norm_sq(&j, TOL).unwrap();
            let scaled = q_norm_sq(&j.scaled(10.0), TOL).unwrap();
            let tol = 1e-9 * (1.0 + 100.0 * base);
            prop_assert!((scaled - 100.0 * base).abs() <= tol, "{} vs {}", scaled, 100.0 * base);
        }
    }
}
