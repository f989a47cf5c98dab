//! Unit-disk geometry: representation, extents, proximity predicates and the
//! s-distance metric.

mod disk;
pub mod oracle;
mod proximity;
mod sdistance;
mod vec3;

pub use disk::{
    angle_between, canonicalize_normal, disk_extent, disks_identical, Box3, Disk, PlacedDisk,
    ToleranceConfig, UnitVec3, IDENTICAL_ANGLE,
};
pub use proximity::{
    min_distance, overlap_status, penetration_depth, project_point_to_disk, OverlapReport,
    OverlapStatus, Separation,
};
pub use sdistance::{angle_lower_bound, s_distance, s_distance_detailed, ContactCase, SDistance};
pub use vec3::Vec3;

/// `arccos(1/√3)`: the angle between a cube diagonal and an edge. Every
/// normal lies within this angle of its closest coordinate axis.
pub fn phi0() -> f64 {
    (1.0 / 3f64.sqrt()).acos()
}
