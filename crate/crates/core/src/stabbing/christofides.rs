use super::matching::min_weight_perfect_matching;
use super::mst::mst;
use super::{DistanceMatrix, Ordering};
use crate::error::Result;

/// Shortest Hamiltonian path approximation with free endpoints, within 3/2 of
/// optimal on metric inputs.
///
/// Odd-degree tree vertices are matched together with two dummy vertices
/// that cost nothing to reach and cannot be matched to each other. The two
/// real vertices matched to dummies stay odd and become the path endpoints.
pub fn christofides_path(matrix: &DistanceMatrix) -> Result<Ordering> {
    let n = matrix.len();
    if n <= 2 {
        return Ordering::new((0..n).collect());
    }
    let tree = mst(matrix);
    let mut degree = vec![0usize; n];
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut edge_count = 0;
    let mut add_edge = |adj: &mut Vec<Vec<(usize, usize)>>, a: usize, b: usize| {
        adj[a].push((b, edge_count));
        adj[b].push((a, edge_count));
        edge_count += 1;
    };
    for &(i, j) in &tree.edges {
        degree[i] += 1;
        degree[j] += 1;
        add_edge(&mut adjacency, i, j);
    }

    let odd: Vec<usize> = (0..n).filter(|&v| degree[v] % 2 == 1).collect();
    let k = odd.len();
    let mate = min_weight_perfect_matching(k + 2, |a, b| match (a < k, b < k) {
        (true, true) => Some(matrix.get(odd[a], odd[b])),
        (true, false) | (false, true) => Some(0.0),
        (false, false) => None,
    })?;
    let mut endpoints = Vec::with_capacity(2);
    for a in 0..k {
        let b = mate[a];
        if b >= k {
            endpoints.push(odd[a]);
        } else if a < b {
            add_edge(&mut adjacency, odd[a], odd[b]);
        }
    }
    debug_assert_eq!(endpoints.len(), 2);
    let start = endpoints.iter().copied().min().unwrap_or(0);

    for list in &mut adjacency {
        list.sort_unstable();
    }
    let walk = euler_path(&adjacency, edge_count, start);
    let mut seen = vec![false; n];
    let order: Vec<usize> = walk
        .into_iter()
        .filter(|&v| !std::mem::replace(&mut seen[v], true))
        .collect();
    Ordering::new(order)
}

/// Hierholzer's algorithm; each vertex leaves along its smallest unused
/// neighbour first.
fn euler_path(adjacency: &[Vec<(usize, usize)>], edge_count: usize, start: usize) -> Vec<usize> {
    let mut used = vec![false; edge_count];
    let mut cursor = vec![0usize; adjacency.len()];
    let mut stack = vec![start];
    let mut out = Vec::with_capacity(edge_count + 1);
    while let Some(&v) = stack.last() {
        let list = &adjacency[v];
        while cursor[v] < list.len() && used[list[cursor[v]].1] {
            cursor[v] += 1;
        }
        if let Some(&(w, e)) = list.get(cursor[v]) {
            used[e] = true;
            stack.push(w);
        } else {
            out.push(v);
            stack.pop();
        }
    }
    out.reverse();
    out
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
    fn tiny_inputs() {
        assert_eq!(christofides_path(&matrix(1, |_, _| 0.0)).unwrap().as_slice(), &[0]);
        assert_eq!(christofides_path(&matrix(2, |_, _| 1.0)).unwrap().as_slice(), &[0, 1]);
    }

    #[test]
    fn three_vertices_drop_heaviest_edge() {
        // Heaviest edge is (0, 2); the optimal path goes through 1.
        let m = matrix(3, |i, j| match (i, j) {
            (0, 1) => 1.0,
            (1, 2) => 1.5,
            _ => 2.0,
        });
        let o = christofides_path(&m).unwrap();
        assert_eq!(m.path_length(o.as_slice()), 2.5);
    }

    #[test]
    fn collinear_points_are_ordered() {
        let pos: [f64; 6] = [3.0, 0.0, 7.0, 1.0, 5.0, 2.0];
        let m = matrix(6, |i, j| (pos[i] - pos[j]).abs());
        let o = christofides_path(&m).unwrap();
        assert_eq!(m.path_length(o.as_slice()), 7.0);
    }

    #[test]
    fn euler_path_covers_every_edge() {
        // Path 0-1-2 plus a doubled edge 1-3.
        let adjacency = vec![
            vec![(1, 0)],
            vec![(0, 0), (2, 1), (3, 2), (3, 3)],
            vec![(1, 1)],
            vec![(1, 2), (1, 3)],
        ];
        assert_eq!(euler_path(&adjacency, 4, 0), vec![0, 1, 3, 1, 2]);
    }
}
