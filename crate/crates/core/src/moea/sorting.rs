use crate::pareto::dominates_slice;
use crate::population::ObjectiveSet;
use crate::scalar::Scalar;

/// Non-dominated sorting into successive fronts of indices.
///
/// Front 0 holds the members no one dominates; front `j` is the
/// non-dominated layer once fronts `0..j` are removed.
pub fn fast_nondominated_sort<T: Scalar, S: ObjectiveSet<T> + ?Sized>(set: &S) -> Vec<Vec<usize>> {
    let k = set.count();
    let mut dominated_by_count = vec![0usize; k];
    let mut dominates_list: Vec<Vec<usize>> = vec![Vec::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            let (a, b) = (set.point(i), set.point(j));
            if dominates_slice(a, b) {
                dominates_list[i].push(j);
                dominated_by_count[j] += 1;
            } else if dominates_slice(b, a) {
                dominates_list[j].push(i);
                dominated_by_count[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..k).filter(|&i| dominated_by_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates_list[i] {
                dominated_by_count[j] -= 1;
                if dominated_by_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Crowding distance of each member of a front.
///
/// Boundary members of every objective get `+inf`; interior members sum
/// the neighbour gaps normalised by the objective's range. Objectives with
/// zero range contribute nothing.
pub fn crowding_distance<T: Scalar>(front: &[&[T]]) -> Vec<T> {
    let k = front.len();
    let mut dist = vec![T::zero(); k];
    if k <= 2 {
        return vec![T::infinity(); k];
    }
    let m = front[0].len();
    let mut order: Vec<usize> = (0..k).collect();
    for obj in 0..m {
        order.sort_by(|&a, &b| {
            front[a][obj]
                .partial_cmp(&front[b][obj])
                .expect("finite objectives")
                .then(a.cmp(&b))
        });
        let lo = front[order[0]][obj];
        let hi = front[order[k - 1]][obj];
        dist[order[0]] = T::infinity();
        dist[order[k - 1]] = T::infinity();
        let range = hi - lo;
        if range > T::zero() {
            for w in order.windows(3) {
                let gap = front[w[2]][obj] - front[w[0]][obj];
                dist[w[1]] += gap / range;
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pareto::non_dominated_indices;
    use crate::population::ObjectivePoint;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pts(rows: &[[f64; 2]]) -> Vec<ObjectivePoint<f64>> {
        rows.iter().map(|r| ObjectivePoint::new(r.to_vec()).unwrap()).collect()
    }

    #[test]
    fn sort_example() {
        let p = pts(&[[0.0, 1.0], [1.0, 0.0], [2.0, 2.0], [3.0, 3.0]]);
        assert_eq!(fast_nondominated_sort(&p), vec![vec![0, 1], vec![2], vec![3]]);
    }

    #[test]
    fn single_front_when_mutually_non_dominated() {
        let p = pts(&[[0.0, 3.0], [1.0, 2.0], [2.0, 1.0], [3.0, 0.0]]);
        assert_eq!(fast_nondominated_sort(&p), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn front_zero_matches_filter_and_partition() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let p: Vec<_> = (0..40)
                .map(|_| ObjectivePoint::new(vec![rng.random::<f64>(), rng.random::<f64>(), rng.random::<f64>()]).unwrap())
                .collect();
            let fronts = fast_nondominated_sort(&p);
            assert_eq!(fronts[0], non_dominated_indices(&p));
            let mut all: Vec<usize> = fronts.concat();
            all.sort_unstable();
            assert_eq!(all, (0..40).collect::<Vec<_>>());
        }
    }

    #[test]
    fn crowding_examples() {
        let a = [0.0f64, 1.0];
        let b = [1.0, 0.0];
        assert!(crowding_distance(&[&a[..], &b[..]]).iter().all(|d| d.is_infinite()));

        let c = [0.5, 0.5];
        let d = crowding_distance(&[&a[..], &c[..], &b[..]]);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        assert_eq!(d[1], 2.0);
    }

    #[test]
    fn crowding_zero_range_objective() {
        let rows = [[0.0, 1.0], [0.5, 1.0], [1.0, 1.0]];
        let refs: Vec<&[f64]> = rows.iter().map(|r| &r[..]).collect();
        let d = crowding_distance(&refs);
        assert_eq!(d[1], 1.0);
    }

    #[test]
    fn crowding_permutation_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let rows: Vec<[f64; 3]> = (0..12).map(|_| [rng.random(), rng.random(), rng.random()]).collect();
        let refs: Vec<&[f64]> = rows.iter().map(|r| &r[..]).collect();
        let base = crowding_distance(&refs);
        let perm: Vec<usize> = vec![5, 2, 11, 0, 7, 1, 9, 3, 10, 4, 8, 6];
        let shuffled: Vec<&[f64]> = perm.iter().map(|&i| refs[i]).collect();
        let d = crowding_distance(&shuffled);
        for (pos, &i) in perm.iter().enumerate() {
            assert_eq!(d[pos], base[i]);
        }
    }
}
