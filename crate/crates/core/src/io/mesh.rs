use std::fmt::Write;

use crate::error::{Error, Result};
use crate::geometry::Vec3;
use crate::packing::PackingSolution;

pub const DEFAULT_SEGMENTS: usize = 64;

/// Wavefront OBJ text: each disk as a `segments`-gon triangle fan around its
/// center (`segments + 1` vertices), then the container's 8 corners joined by
/// 12 line elements.
pub fn export_mesh(solution: &PackingSolution, segments: usize) -> Result<Vec<u8>> {
    if segments < 3 {
        return Err(Error::InvalidInput(format!("need at least 3 segments, got {segments}")));
    }
    let mut out = String::new();
    let n = solution.placements.len();
    let _ = writeln!(out, "# {n} disks, {segments} segments per rim");
    let v = |out: &mut String, p: Vec3| {
        let _ = writeln!(out, "v {:.9} {:.9} {:.9}", p.x, p.y, p.z);
    };
    let mut base = 1usize;
    for (i, p) in solution.placements.iter().enumerate() {
        let normal = p.normal();
        // Any unit vector orthogonal to the normal starts the rim.
        let helper = if normal.x.abs() < 0.9 { Vec3::axis(0) } else { Vec3::axis(1) };
        let u = normal.cross(helper);
        let u = u.scale(1.0 / u.norm());
        let w = normal.cross(u);
        let _ = writeln!(out, "o disk_{i}");
        for k in 0..segments {
            let a = std::f64::consts::TAU * k as f64 / segments as f64;
            v(&mut out, p.center + (u * a.cos() + w * a.sin()) * solution.radius);
        }
        v(&mut out, p.center);
        let center = base + segments;
        for k in 0..segments {
            let _ = writeln!(out, "f {center} {} {}", base + k, base + (k + 1) % segments);
        }
        base += segments + 1;
    }
    let lo = solution.container.min_corner;
    let d = solution.container.dims;
    let _ = writeln!(out, "o container");
    for corner in 0..8 {
        let pick = |bit: usize, axis: usize| if corner >> bit & 1 == 1 { lo[axis] + d[axis] } else { lo[axis] };
        v(&mut out, Vec3::new(pick(0, 0), pick(1, 1), pick(2, 2)));
    }
    // Corners differing in exactly one bit share an edge.
    for a in 0..8usize {
        for bit in 0..3 {
            let b = a | 1 << bit;
            if b != a {
                let _ = writeln!(out, "l {} {}", base + a, base + b);
            }
        }
    }
    Ok(out.into_bytes())
}
