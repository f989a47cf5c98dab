//! Approximate packing of unit-radius disks in 3D into a small axis-parallel
//! box, allowing translations only.
//!
//! The pipeline: disks are grouped by the coordinate axis closest to their
//! normal, each group is *stabbed* along its axis (centers on a line,
//! consecutive disks touching) by solving a shortest Hamiltonian path in the
//! metric of [`geometry::s_distance`], and the three stabbings are cut into
//! pieces and assembled into one container. Every packing carries a
//! computable lower bound on the optimal volume and the resulting certified
//! ratio.

pub mod error;
pub mod geometry;
pub mod io;
pub mod packing;
pub mod par;
pub mod stabbing;
pub mod verification;

pub use error::{Error, Result};
pub use geometry::{Box3, Disk, PlacedDisk, ToleranceConfig, UnitVec3, Vec3};
pub use packing::{pack, PackingSolution, SolverConfig};
pub use stabbing::{DistanceMatrix, Ordering, Stabbing};
pub use verification::{verify_packing, VerificationReport};
