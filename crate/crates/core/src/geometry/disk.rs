use serde::{Deserialize, Serialize};

use super::Vec3;
use crate::error::{Error, Result};

/// Coordinates with magnitude at or below this are skipped by the sign rule.
const SIGN_EPS: f64 = 1e-12;

/// Two canonical normals closer than this angle (radians) denote one disk.
pub const IDENTICAL_ANGLE: f64 = 1e-12;

/// A vector of Euclidean length one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct UnitVec3(Vec3);

impl UnitVec3 {
    pub fn new(v: Vec3) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::InvalidInput(format!("non-finite vector {v:?}")));
        }
        let n = v.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::InvalidInput(format!("cannot normalize {v:?}")));
        }
        // Already-unit input is kept bit-for-bit so that normalization is
        // idempotent.
        if (n - 1.0).abs() <= 4.0 * f64::EPSILON {
            Ok(UnitVec3(v))
        } else {
            Ok(UnitVec3(v.scale(1.0 / n)))
        }
    }

    pub fn axis(axis: usize) -> Self {
        UnitVec3(Vec3::axis(axis))
    }

    pub fn get(self) -> Vec3 {
        self.0
    }

    pub fn dot(self, v: Vec3) -> f64 {
        self.0.dot(v)
    }
}

impl TryFrom<[f64; 3]> for UnitVec3 {
    type Error = Error;
    fn try_from(a: [f64; 3]) -> Result<Self> {
        UnitVec3::new(Vec3::from(a))
    }
}

impl From<UnitVec3> for [f64; 3] {
    fn from(u: UnitVec3) -> Self {
        u.0.to_array()
    }
}

/// A unit-radius disk, identified up to translation by its normal.
///
/// The normal is kept in canonical orientation: its first coordinate with
/// magnitude above `1e-12` is positive, so `Disk(n) == Disk(-n)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct Disk {
    normal: UnitVec3,
}

impl Disk {
    pub fn new(v: Vec3) -> Result<Self> {
        canonicalize_normal(v)
    }

    pub fn normal(&self) -> Vec3 {
        self.normal.get()
    }

    pub fn unit_normal(&self) -> UnitVec3 {
        self.normal
    }

    /// Extent of this disk centered at the origin; see [`disk_extent`].
    pub fn extent(&self) -> Vec3 {
        disk_extent(self)
    }

    pub fn at(self, center: Vec3) -> PlacedDisk {
        PlacedDisk { disk: self, center }
    }
}

impl TryFrom<[f64; 3]> for Disk {
    type Error = Error;
    fn try_from(a: [f64; 3]) -> Result<Self> {
        Disk::new(Vec3::from(a))
    }
}

impl From<Disk> for [f64; 3] {
    fn from(d: Disk) -> Self {
        d.normal().to_array()
    }
}

/// Normalize `v` and flip it so that its first non-negligible coordinate is
/// positive.
pub fn canonicalize_normal(v: Vec3) -> Result<Disk> {
    if !v.is_finite() {
        return Err(Error::InvalidInput(format!("non-finite normal {v:?}")));
    }
    if v.norm_squared() == 0.0 {
        return Err(Error::InvalidInput("zero normal vector".into()));
    }
    let u = UnitVec3::new(v)?.get();
    let lead = [u.x, u.y, u.z].into_iter().find(|c| c.abs() > SIGN_EPS);
    let u = match lead {
        Some(c) if c < 0.0 => -u,
        _ => u,
    };
    Ok(Disk {
        normal: UnitVec3(u),
    })
}

/// Angle in `[0, π/2]` between the (unoriented) normals of two disks.
///
/// Evaluated as `atan2(|n₁×n₂|, |n₁·n₂|)`, which equals `arccos |n₁·n₂|` but
/// stays accurate for nearly parallel normals.
pub fn angle_between(d1: &Disk, d2: &Disk) -> f64 {
    let (a, b) = (d1.normal(), d2.normal());
    let angle = a.cross(b).norm().atan2(a.dot(b).abs());
    angle.clamp(0.0, std::f64::consts::FRAC_PI_2)
}

pub fn disks_identical(d1: &Disk, d2: &Disk) -> bool {
    angle_between(d1, d2) <= IDENTICAL_ANGLE
}

/// Axis-parallel bounding-box dimensions of the disk centered at the origin:
/// `2·sqrt(1 − nᵢ²)` per axis.
pub fn disk_extent(d: &Disk) -> Vec3 {
    d.normal().map(|c| 2.0 * (1.0 - c * c).max(0.0).sqrt())
}

/// A disk translated so that its center sits at `center`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlacedDisk {
    #[serde(rename = "normal")]
    pub disk: Disk,
    pub center: Vec3,
}

impl PlacedDisk {
    pub fn normal(&self) -> Vec3 {
        self.disk.normal()
    }

    /// Half of [`disk_extent`]: how far the disk reaches from its center along
    /// each axis.
    pub fn half_extent(&self) -> Vec3 {
        self.disk.extent().scale(0.5)
    }

    pub fn bounding_box(&self) -> Box3 {
        let h = self.half_extent();
        Box3::from_corners(self.center - h, self.center + h)
    }

    pub fn translated(&self, by: Vec3) -> PlacedDisk {
        PlacedDisk {
            disk: self.disk,
            center: self.center + by,
        }
    }
}

/// An axis-parallel box.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Box3 {
    pub min_corner: Vec3,
    pub dims: Vec3,
}

impl Box3 {
    pub fn new(min_corner: Vec3, dims: Vec3) -> Result<Self> {
        if !min_corner.is_finite() || !dims.is_finite() {
            return Err(Error::InvalidInput("non-finite box".into()));
        }
        if dims.x < 0.0 || dims.y < 0.0 || dims.z < 0.0 {
            return Err(Error::InvalidInput(format!("negative box dims {dims:?}")));
        }
        Ok(Box3 { min_corner, dims })
    }

    pub fn from_corners(lo: Vec3, hi: Vec3) -> Self {
        Box3 {
            min_corner: lo,
            dims: (hi - lo).map(|d| d.max(0.0)),
        }
    }

    pub fn max_corner(&self) -> Vec3 {
        self.min_corner + self.dims
    }

    pub fn volume(&self) -> f64 {
        self.dims.x * self.dims.y * self.dims.z
    }

    pub fn union(&self, o: &Box3) -> Box3 {
        Box3::from_corners(
            self.min_corner.min(o.min_corner),
            self.max_corner().max(o.max_corner()),
        )
    }

    /// Tight box around a set of placed disks; `None` when empty.
    pub fn enclosing<'a>(disks: impl IntoIterator<Item = &'a PlacedDisk>) -> Option<Box3> {
        disks
            .into_iter()
            .map(PlacedDisk::bounding_box)
            .reduce(|a, b| a.union(&b))
    }
}

/// Numerical tolerances shared by the geometric predicates.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Slack for case tests inside the s-distance computation.
    pub predicate_eps: f64,
    /// Penetration depth (and contact distance) regarded as touching.
    pub overlap_eps: f64,
    /// Step size at which alternating projection stops.
    pub convergence_eps: f64,
    pub max_iterations: usize,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig {
            predicate_eps: 1e-9,
            overlap_eps: 1e-7,
            convergence_eps: 1e-12,
            max_iterations: 10_000,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = |x: f64| x.is_finite() && x > 0.0;
        if !(ok(self.predicate_eps) && ok(self.overlap_eps) && ok(self.convergence_eps))
            || self.max_iterations == 0
        {
            return Err(Error::InvalidInput(format!(
                "tolerances must be positive: {self:?}"
            )));
        }
        Ok(())
    }
}
