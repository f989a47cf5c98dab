//! Instance and solution documents, generators, and mesh export.

mod generators;
mod instance;
mod mesh;
mod solution;

pub use generators::{gen_random_cap, gen_sphere_grid};
pub use instance::{parse_instance, write_instance, Instance, InstanceMeta};
pub use mesh::{export_mesh, DEFAULT_SEGMENTS};
pub use solution::{read_solution, write_solution, Certificate, SolutionDocument};
