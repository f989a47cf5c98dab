use super::{DistanceMatrix, Ordering};
use crate::error::{Error, Result};

/// Default size limit of the exact solver.
pub const HELD_KARP_LIMIT: usize = 15;

/// Hard cap regardless of the requested limit (memory grows as n·2ⁿ).
pub const HELD_KARP_MAX: usize = 20;

/// Exact shortest Hamiltonian path with free endpoints by subset dynamic
/// programming. Among optimal paths (up to a 1e-12 relative slack) the
/// lexicographically smallest is returned.
pub fn held_karp_path(matrix: &DistanceMatrix, limit: usize) -> Result<Ordering> {
    let n = matrix.len();
    let limit = limit.min(HELD_KARP_MAX);
    if n > limit {
        return Err(Error::SizeExceeded { n, limit });
    }
    if n <= 1 {
        return Ordering::new((0..n).collect());
    }
    // best[mask * n + v]: shortest path that starts at v and visits exactly
    // the vertices of mask (v ∈ mask).
    let full = (1usize << n) - 1;
    let mut best = vec![f64::INFINITY; (full + 1) * n];
    for v in 0..n {
        best[(1 << v) * n + v] = 0.0;
    }
    for mask in 1..=full {
        if mask.count_ones() < 2 {
            continue;
        }
        for v in 0..n {
            if mask & (1 << v) == 0 {
                continue;
            }
            let rest = mask ^ (1 << v);
            let row = matrix.row(v);
            let mut value = f64::INFINITY;
            let mut bits = rest;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                value = value.min(row[u] + best[rest * n + u]);
            }
            best[mask * n + v] = value;
        }
    }

    let optimum = (0..n).map(|v| best[full * n + v]).fold(f64::INFINITY, f64::min);
    let slack = 1e-12 * (1.0 + optimum);
    let mut v = (0..n)
        .find(|&v| best[full * n + v] <= optimum + slack)
        .expect("some start attains the optimum");
    let mut order = vec![v];
    let mut mask = full;
    while mask != (1 << v) {
        let target = best[mask * n + v];
        let rest = mask ^ (1 << v);
        let u = (0..n)
            .filter(|&u| rest & (1 << u) != 0)
            .find(|&u| matrix.get(v, u) + best[rest * n + u] <= target + slack)
            .expect("some successor attains the optimum");
        order.push(u);
        mask = rest;
        v = u;
    }
    Ordering::new(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::UnitVec3;

    fn matrix(n: usize, f: impl Fn(usize, usize) -> f64) -> DistanceMatrix {
        let mut e = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    e[i * n + j] = f(i.min(j), i.max(j));
                }
            }
        }
        DistanceMatrix::from_entries(n, e, UnitVec3::axis(2)).unwrap()
    }

    #[test]
    fn two_vertices() {
        let m = matrix(2, |_, _| 0.3);
        let o = held_karp_path(&m, HELD_KARP_LIMIT).unwrap();
        assert_eq!(o.as_slice(), &[0, 1]);
        assert_eq!(m.path_length(o.as_slice()), 0.3);
    }

    #[test]
    fn ties_resolve_lexicographically() {
        let m = matrix(4, |_, _| 1.0);
        assert_eq!(held_karp_path(&m, 15).unwrap().as_slice(), &[0, 1, 2, 3]);
    }

    #[test]
    fn collinear_optimum() {
        let pos: [f64; 6] = [3.0, 0.0, 7.0, 1.0, 5.0, 2.0];
        let m = matrix(6, |i, j| (pos[i] - pos[j]).abs());
        let o = held_karp_path(&m, 15).unwrap();
        assert_eq!(o.as_slice(), &[1, 3, 5, 0, 4, 2]);
    }

    #[test]
    fn limit_is_enforced() {
        let m = matrix(5, |_, _| 1.0);
        assert!(matches!(
            held_karp_path(&m, 4),
            Err(Error::SizeExceeded { n: 5, limit: 4 })
        ));
    }
}
