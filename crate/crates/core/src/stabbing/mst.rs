use super::DistanceMatrix;

/// Spanning tree edges `(i, j)` with `i < j`, and the total weight.
#[derive(Clone, Debug, PartialEq)]
pub struct SpanningTree {
    pub edges: Vec<(usize, usize)>,
    pub weight: f64,
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // Smaller root wins so the structure is independent of call order.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Kruskal's algorithm on the complete graph. Equal weights are taken in
/// lexicographic `(i, j)` order.
pub fn mst(matrix: &DistanceMatrix) -> SpanningTree {
    let n = matrix.len();
    let mut candidates: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n / 2);
    for i in 0..n {
        for j in i + 1..n {
            candidates.push((matrix.get(i, j), i, j));
        }
    }
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut sets = DisjointSets::new(n);
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    let mut weight = 0.0;
    for (w, i, j) in candidates {
        if sets.union(i, j) {
            edges.push((i, j));
            weight += w;
            if edges.len() + 1 == n {
                break;
            }
        }
    }
    SpanningTree { edges, weight }
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
    fn tiny_trees() {
        let t = mst(&matrix(1, |_, _| 0.0));
        assert!(t.edges.is_empty());
        assert_eq!(t.weight, 0.0);
        let t = mst(&matrix(2, |_, _| 0.7));
        assert_eq!(t.edges, vec![(0, 1)]);
        assert_eq!(t.weight, 0.7);
    }

    #[test]
    fn ties_follow_index_order() {
        let t = mst(&matrix(4, |_, _| 1.0));
        assert_eq!(t.edges, vec![(0, 1), (0, 2), (0, 3)]);
    }

    #[test]
    fn points_on_a_line() {
        let t = mst(&matrix(5, |i, j| (j - i) as f64));
        assert_eq!(t.weight, 4.0);
        assert_eq!(t.edges, vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
    }
}
