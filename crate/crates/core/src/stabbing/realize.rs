use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{s_distance, Disk, PlacedDisk, ToleranceConfig, UnitVec3};
#[cfg(test)]
use crate::geometry::Vec3;

/// A permutation of disk indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Ordering(Vec<usize>);

impl Ordering {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; order.len()];
        for &i in &order {
            if i >= order.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput(format!(
                    "ordering {order:?} is not a permutation"
                )));
            }
        }
        Ok(Ordering(order))
    }

    pub fn identity(n: usize) -> Self {
        Ordering((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> Self {
        Ordering(self.0.iter().rev().copied().collect())
    }
}

impl TryFrom<Vec<usize>> for Ordering {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Ordering::new(v)
    }
}

impl From<Ordering> for Vec<usize> {
    fn from(o: Ordering) -> Self {
        o.0
    }
}

/// Centers on a line through the origin along `direction`, in `ordering`
/// order, consecutive disks touching.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Stabbing {
    pub direction: UnitVec3,
    pub ordering: Ordering,
    /// `offsets[k]`: distance of the k-th disk of the ordering from the
    /// first center. Prefix sums, so `offsets[0] == 0`.
    pub offsets: Vec<f64>,
    pub length: f64,
}

impl Stabbing {
    /// Offsets indexed by disk rather than by position.
    pub fn offsets_by_disk(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.offsets.len()];
        for (&disk, &t) in self.ordering.as_slice().iter().zip(&self.offsets) {
            out[disk] = t;
        }
        out
    }
}

/// Place the disks along `s` in the given order. Returns the stabbing and the
/// placements in input order.
pub fn realize_stabbing(
    disks: &[Disk],
    ordering: &Ordering,
    s: UnitVec3,
    tol: &ToleranceConfig,
) -> Result<(Stabbing, Vec<PlacedDisk>)> {
    if ordering.len() != disks.len() {
        return Err(Error::InvalidInput(format!(
            "ordering covers {} disks, instance has {}",
            ordering.len(),
            disks.len()
        )));
    }
    let order = ordering.as_slice();
    let mut offsets = Vec::with_capacity(order.len());
    let mut t = 0.0;
    for (k, &disk) in order.iter().enumerate() {
        if k > 0 {
            // Lower index first, as in the distance matrix.
            let prev = order[k - 1];
            let (i, j) = (prev.min(disk), prev.max(disk));
            t += s_distance(&disks[i], &disks[j], s, tol).map_err(|e| Error::PairGeometry {
                i,
                j,
                source: Box::new(e),
            })?;
        }
        offsets.push(t);
    }
    let stabbing = Stabbing {
        direction: s,
        ordering: ordering.clone(),
        length: offsets.last().copied().unwrap_or(0.0),
        offsets,
    };
    let placements = stabbing
        .offsets_by_disk()
        .iter()
        .zip(disks)
        .map(|(&t, d)| d.at(s.get() * t))
        .collect();
    Ok((stabbing, placements))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{overlap_status, OverlapStatus};

    fn tilted(deg: f64) -> Disk {
        let a = deg.to_radians();
        Disk::new(Vec3::new(a.sin(), 0.0, a.cos())).unwrap()
    }

    #[test]
    fn ordering_validation() {
        assert!(Ordering::new(vec![2, 0, 1]).is_ok());
        assert!(Ordering::new(vec![0, 0]).is_err());
        assert!(Ordering::new(vec![1]).is_err());
        assert_eq!(Ordering::new(vec![2, 0, 1]).unwrap().reversed().as_slice(), &[1, 0, 2]);
    }

    #[test]
    fn single_and_pair() {
        let tol = ToleranceConfig::default();
        let z = UnitVec3::axis(2);
        let (st, p) = realize_stabbing(&[tilted(0.0)], &Ordering::identity(1), z, &tol).unwrap();
        assert_eq!(st.length, 0.0);
        assert_eq!(p[0].center, Vec3::ZERO);

        let disks = [tilted(0.0), tilted(30.0)];
        let order = Ordering::new(vec![1, 0]).unwrap();
        let (st, p) = realize_stabbing(&disks, &order, z, &tol).unwrap();
        assert!((st.length - 0.5).abs() < 1e-9);
        assert_eq!(p[1].center, Vec3::ZERO);
        assert!((p[0].center.z - 0.5).abs() < 1e-9);
        let status = overlap_status(&p[0], &p[1], &tol).status;
        assert_eq!(status, OverlapStatus::Touching);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let tol = ToleranceConfig::default();
        let r = realize_stabbing(&[tilted(0.0)], &Ordering::identity(2), UnitVec3::axis(2), &tol);
        assert!(r.is_err());
    }
}
