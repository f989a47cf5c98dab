//! Brute-force s-distance, used to check [`super::s_distance`] in tests.
//!
//! It only knows how to tell overlapping placements apart: it scans the
//! separation `t ∈ [0, 4]` on a grid with [`overlap_status`], then bisects the
//! last overlapping grid cell.

use super::{overlap_status, Disk, OverlapStatus, ToleranceConfig, UnitVec3};

/// Tolerances for the scan: much tighter than the defaults so the located
/// boundary sits at the true contact.
pub fn oracle_tolerance() -> ToleranceConfig {
    ToleranceConfig {
        predicate_eps: 1e-12,
        overlap_eps: 1e-12,
        convergence_eps: 1e-13,
        max_iterations: 10_000,
    }
}

/// Estimate `d_s(d1, d2)` for distinct disks.
pub fn s_distance_oracle(d1: &Disk, d2: &Disk, s: UnitVec3, resolution: usize) -> f64 {
    let tol = oracle_tolerance();
    let resolution = resolution.max(1);
    let step = 4.0 / resolution as f64;
    let p1 = d1.at(Default::default());
    let overlapping = |t: f64| {
        let p2 = d2.at(s.get().scale(t));
        overlap_status(&p1, &p2, &tol).status == OverlapStatus::Overlapping
    };
    let last = (0..=resolution)
        .rev()
        .map(|k| k as f64 * step)
        .find(|&t| overlapping(t));
    let Some(mut lo) = last else {
        return 0.0;
    };
    let mut hi = lo + step;
    while hi - lo > tol.convergence_eps {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if overlapping(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
