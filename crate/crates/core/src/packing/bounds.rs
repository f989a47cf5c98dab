use serde::{Deserialize, Serialize};

use super::classify::global_extent;
use crate::error::{Error, Result};
use crate::geometry::Disk;
use crate::stabbing::{mst, DistanceMatrix};

/// Approximation factor of the packing construction.
pub const PACKING_FACTOR: f64 = 284.0;

/// Any packing of volume V yields a stabbing of length at most this times V.
pub const STAB_PER_VOLUME: f64 = 81.0 / 8.0;

/// Computable lower bound on the optimal container volume.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBound {
    /// `E_x·E_y·E_z`: the container must hold every disk's extent box.
    pub extent_bound: f64,
    /// `(8/81)·P` with P a lower bound on the optimal stabbing length of
    /// some class.
    pub stab_bound: f64,
    pub value: f64,
}

impl LowerBound {
    pub fn new(extent_bound: f64, path_bound: f64) -> Self {
        let stab_bound = path_bound / STAB_PER_VOLUME;
        LowerBound {
            extent_bound,
            stab_bound,
            value: extent_bound.max(stab_bound),
        }
    }
}

/// Lower bound from the global extent and the heaviest per-class spanning
/// tree (each matrix belongs to one class, built along its axis).
pub fn lower_bound(disks: &[Disk], class_matrices: &[DistanceMatrix]) -> Result<LowerBound> {
    let e = global_extent(disks)?;
    let path = class_matrices
        .iter()
        .map(|m| mst(m).weight)
        .fold(0.0, f64::max);
    Ok(LowerBound::new(e.x * e.y * e.z, path))
}

/// Factor for packing congruent copies of a flat shape whose enclosing and
/// inscribed disks (concentric) have radius ratio `r`.
pub fn shape_packing_factor(r: f64) -> Result<f64> {
    if !r.is_finite() || r < 1.0 {
        return Err(Error::InvalidInput(format!("radius ratio must be ≥ 1, got {r}")));
    }
    Ok(PACKING_FACTOR * r * r * r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{UnitVec3, Vec3};
    use crate::stabbing::build_distance_matrix;
    use crate::geometry::ToleranceConfig;

    #[test]
    fn shape_factors() {
        assert_eq!(shape_packing_factor(1.0).unwrap(), 284.0);
        assert_eq!(shape_packing_factor(2.0).unwrap(), 2272.0);
        let sq = shape_packing_factor(2f64.sqrt()).unwrap();
        assert!((sq - 284.0 * 2.0 * 2f64.sqrt()).abs() < 1e-12 * sq);
        assert!(shape_packing_factor(0.5).is_err());
        assert!(shape_packing_factor(f64::NAN).is_err());
    }

    #[test]
    fn simple_bounds() {
        let tol = ToleranceConfig::default();
        let one = [Disk::new(Vec3::new(0.0, 0.0, 1.0)).unwrap()];
        let m = build_distance_matrix(&one, UnitVec3::axis(2), &tol).unwrap();
        let lb = lower_bound(&one, &[m]).unwrap();
        assert_eq!((lb.extent_bound, lb.stab_bound, lb.value), (0.0, 0.0, 0.0));

        let two = [
            Disk::new(Vec3::new(0.0, 0.0, 1.0)).unwrap(),
            Disk::new(Vec3::new(1.0, 0.0, 0.0)).unwrap(),
        ];
        let lb = lower_bound(&two, &[]).unwrap();
        assert_eq!(lb.extent_bound, 8.0);
        assert_eq!(lb.value, 8.0);
    }
}
