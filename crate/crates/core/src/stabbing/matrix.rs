use crate::error::{Error, Result};
use crate::geometry::{s_distance, Disk, ToleranceConfig, UnitVec3};
use crate::par::{self, Execution};

/// Pairwise s-distances of a disk set for one direction.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<f64>,
    direction: UnitVec3,
}

impl DistanceMatrix {
    /// Build from a row-major `n × n` table. The table must be symmetric with
    /// a zero diagonal and nonnegative finite entries.
    pub fn from_entries(n: usize, entries: Vec<f64>, direction: UnitVec3) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::InvalidInput(format!(
                "expected {} matrix entries, got {}",
                n * n,
                entries.len()
            )));
        }
        for i in 0..n {
            if entries[i * n + i] != 0.0 {
                return Err(Error::InvalidInput(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let a = entries[i * n + j];
                if !a.is_finite() || a < 0.0 {
                    return Err(Error::InvalidInput(format!("bad entry at ({i}, {j})")));
                }
                if (a - entries[j * n + i]).abs() > 1e-12 {
                    return Err(Error::InvalidInput(format!("asymmetric at ({i}, {j})")));
                }
            }
        }
        Ok(DistanceMatrix { n, entries, direction })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn direction(&self) -> UnitVec3 {
        self.direction
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    /// Sum of consecutive entries along `order`.
    pub fn path_length(&self, order: &[usize]) -> f64 {
        order.windows(2).map(|w| self.get(w[0], w[1])).sum()
    }
}

/// Pairwise s-distances with the default execution strategy.
pub fn build_distance_matrix(
    disks: &[Disk],
    s: UnitVec3,
    tol: &ToleranceConfig,
) -> Result<DistanceMatrix> {
    build_distance_matrix_with(disks, s, tol, Execution::default())
}

/// Pairwise s-distances. Each unordered pair is evaluated once with the lower
/// index first, so both strategies yield identical bits.
pub fn build_distance_matrix_with(
    disks: &[Disk],
    s: UnitVec3,
    tol: &ToleranceConfig,
    exec: Execution,
) -> Result<DistanceMatrix> {
    let n = disks.len();
    let pairs = par::pairs(n);
    let values = par::map_slice(exec, &pairs, |&(i, j)| {
        s_distance(&disks[i], &disks[j], s, tol).map_err(|e| Error::PairGeometry {
            i,
            j,
            source: Box::new(e),
        })
    });
    let mut entries = vec![0.0; n * n];
    for (&(i, j), v) in pairs.iter().zip(values) {
        let v = v?;
        entries[i * n + j] = v;
        entries[j * n + i] = v;
    }
    Ok(DistanceMatrix { n, entries, direction: s })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Vec3;

    fn tilted(deg: f64) -> Disk {
        let a = deg.to_radians();
        Disk::new(Vec3::new(a.sin(), 0.0, a.cos())).unwrap()
    }

    #[test]
    fn trivial_sizes() {
        let tol = ToleranceConfig::default();
        let z = UnitVec3::axis(2);
        let m = build_distance_matrix(&[tilted(0.0)], z, &tol).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m.get(0, 0), 0.0);
        let m = build_distance_matrix(&[tilted(0.0), tilted(30.0)], z, &tol).unwrap();
        assert!((m.get(0, 1) - 0.5).abs() < 1e-9);
        assert_eq!(m.get(0, 1), m.get(1, 0));
    }

    #[test]
    fn strategies_are_bitwise_identical() {
        let tol = ToleranceConfig::default();
        let disks: Vec<Disk> = (0..12).map(|k| tilted(k as f64 * 4.0)).collect();
        let z = UnitVec3::axis(2);
        let a = build_distance_matrix_with(&disks, z, &tol, Execution::Sequential).unwrap();
        let b = build_distance_matrix_with(&disks, z, &tol, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn from_entries_validates() {
        let z = UnitVec3::axis(2);
        assert!(DistanceMatrix::from_entries(2, vec![0.0, 1.0, 1.0, 0.0], z).is_ok());
        assert!(DistanceMatrix::from_entries(2, vec![0.0, 1.0, 2.0, 0.0], z).is_err());
        assert!(DistanceMatrix::from_entries(2, vec![0.0, 1.0], z).is_err());
    }
}
