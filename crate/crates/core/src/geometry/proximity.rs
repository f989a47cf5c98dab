//! Distance and overlap predicates between placed unit disks.
//!
//! Two placed disks with non-parallel planes can only meet on the common line
//! of their planes, where each disk leaves a chord. Intersection and
//! penetration are read off those chords; the distance between disjoint disks
//! comes from alternating projection.

use serde::{Deserialize, Serialize};

use super::{PlacedDisk, ToleranceConfig, Vec3};

/// Below this `|n₁ × n₂|` the planes are handled as parallel.
const PARALLEL_SIN: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OverlapStatus {
    Disjoint,
    Touching,
    Overlapping,
}

/// Result of [`min_distance`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Separation {
    pub distance: f64,
    /// False when alternating projection hit `max_iterations`; `distance` is
    /// then the best estimate seen.
    pub converged: bool,
    pub iterations: usize,
    /// Closest points found on the first and second disk.
    pub witnesses: (Vec3, Vec3),
}

/// Result of [`overlap_status`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OverlapReport {
    pub status: OverlapStatus,
    /// Radial depth of the deepest common point, see [`penetration_depth`].
    pub penetration: f64,
    pub converged: bool,
}

/// Nearest point of the closed disk to `p`.
pub fn project_point_to_disk(p: Vec3, pd: &PlacedDisk) -> Vec3 {
    let n = pd.normal();
    let v = p - pd.center;
    let in_plane = v - n.scale(v.dot(n));
    let r = in_plane.norm();
    if r > 1.0 {
        pd.center + in_plane.scale(1.0 / r)
    } else {
        pd.center + in_plane
    }
}

/// Chord of one disk on a line, in the line's parameter.
#[derive(Clone, Copy, Debug)]
struct Chord {
    /// Parameter of the foot of the center.
    foot: f64,
    /// Squared distance from the center to the line.
    offset_sq: f64,
}

impl Chord {
    fn interval(&self) -> Option<(f64, f64)> {
        (self.offset_sq <= 1.0).then(|| {
            let w = (1.0 - self.offset_sq).sqrt();
            (self.foot - w, self.foot + w)
        })
    }

    /// `1 − distance to center` for the line point at parameter `u`.
    fn depth_at(&self, u: f64) -> f64 {
        let du = u - self.foot;
        1.0 - (self.offset_sq + du * du).sqrt()
    }
}

enum Layout {
    /// Common line of the two planes: `origin + u·dir`.
    Crossing {
        origin: Vec3,
        dir: Vec3,
        chords: [Chord; 2],
    },
    /// Parallel planes at normal gap `gap`, centers `in_plane` apart.
    Parallel { gap: f64, in_plane: f64 },
}

fn layout(p1: &PlacedDisk, p2: &PlacedDisk) -> Layout {
    let (n1, n2) = (p1.normal(), p2.normal());
    let rel = p2.center - p1.center;
    let d = n1.cross(n2);
    let sin = d.norm();
    if sin < PARALLEL_SIN {
        let h = rel.dot(n1);
        let lateral = rel - n1.scale(h);
        return Layout::Parallel {
            gap: h.abs(),
            in_plane: lateral.norm(),
        };
    }
    // Point on both planes, taken relative to c1 for conditioning.
    let origin = p1.center + d.cross(n1).scale(rel.dot(n2) / (sin * sin));
    let dir = d.scale(1.0 / sin);
    let chord = |c: Vec3| {
        let v = c - origin;
        let foot = v.dot(dir);
        Chord {
            foot,
            offset_sq: (v.norm_squared() - foot * foot).max(0.0),
        }
    };
    Layout::Crossing {
        origin,
        dir,
        chords: [chord(p1.center), chord(p2.center)],
    }
}

/// Radial penetration of two placed disks: the largest `r` such that some
/// common point lies at distance at most `1 − r` from both centers. Zero when
/// the disks do not share a point, and zero for a single contact point.
///
/// Parallel planes closer than `tol.predicate_eps` count as coplanar.
pub fn penetration_depth(p1: &PlacedDisk, p2: &PlacedDisk, tol: &ToleranceConfig) -> f64 {
    match layout(p1, p2) {
        Layout::Parallel { gap, in_plane } => {
            if gap <= tol.predicate_eps && in_plane < 2.0 {
                (2.0 - in_plane) / 2.0
            } else {
                0.0
            }
        }
        Layout::Crossing { chords, .. } => deepest_common_point(&chords).map_or(0.0, |(_, d)| d),
    }
}

/// Maximize `min(depth₁, depth₂)` over the common part of both chords. Both
/// depths are concave in the line parameter, so the maximum sits at an
/// interval end, at one of the feet, or where the depths cross.
fn deepest_common_point(chords: &[Chord; 2]) -> Option<(f64, f64)> {
    let (a1, b1) = chords[0].interval()?;
    let (a2, b2) = chords[1].interval()?;
    let (lo, hi) = (a1.max(a2), b1.min(b2));
    if hi < lo {
        return None;
    }
    let [c1, c2] = chords;
    let mut candidates = vec![lo, hi, c1.foot.clamp(lo, hi), c2.foot.clamp(lo, hi)];
    let df = c2.foot - c1.foot;
    if df.abs() > 1e-15 {
        let u = (c2.offset_sq - c1.offset_sq + c2.foot * c2.foot - c1.foot * c1.foot) / (2.0 * df);
        if (lo..=hi).contains(&u) {
            candidates.push(u);
        }
    }
    candidates
        .into_iter()
        .map(|u| (u, c1.depth_at(u).min(c2.depth_at(u)).max(0.0)))
        .max_by(|a, b| a.1.total_cmp(&b.1))
}

/// Euclidean distance between two closed placed disks.
///
/// Intersecting disks return 0 directly. Otherwise the distance is found by
/// alternating projection, seeded near the planes' common line, and stops once
/// both iterates move less than `tol.convergence_eps`.
pub fn min_distance(p1: &PlacedDisk, p2: &PlacedDisk, tol: &ToleranceConfig) -> Separation {
    let seed = match layout(p1, p2) {
        Layout::Parallel { gap, in_plane } => {
            if gap <= tol.predicate_eps && in_plane <= 2.0 {
                let mid = p1.center + (p2.center - p1.center).scale(0.5);
                return Separation {
                    distance: 0.0,
                    converged: true,
                    iterations: 0,
                    witnesses: (mid, mid),
                };
            }
            p2.center
        }
        Layout::Crossing {
            origin,
            dir,
            chords,
        } => {
            let at = |u: f64| origin + dir.scale(u);
            if let Some((u, _)) = deepest_common_point(&chords) {
                let p = at(u);
                return Separation {
                    distance: 0.0,
                    converged: true,
                    iterations: 0,
                    witnesses: (p, p),
                };
            }
            match (chords[0].interval(), chords[1].interval()) {
                (Some((a1, _)), Some((a2, b2))) => {
                    // Disjoint chords: start from the end of the second chord
                    // facing the first.
                    if b2 < a1 {
                        at(b2)
                    } else {
                        at(a2)
                    }
                }
                (None, Some((a2, b2))) => at(chords[0].foot.clamp(a2, b2)),
                (Some(_), None) | (None, None) => at(chords[1].foot),
            }
        }
    };
    alternate(p1, p2, seed, tol)
}

fn alternate(p1: &PlacedDisk, p2: &PlacedDisk, seed: Vec3, tol: &ToleranceConfig) -> Separation {
    let mut x = project_point_to_disk(seed, p1);
    let mut y = project_point_to_disk(x, p2);
    let mut best = (x.distance(y), x, y);
    for it in 1..=tol.max_iterations {
        let nx = project_point_to_disk(y, p1);
        let ny = project_point_to_disk(nx, p2);
        let step = nx.distance(x).max(ny.distance(y));
        x = nx;
        y = ny;
        let d = x.distance(y);
        if d < best.0 {
            best = (d, x, y);
        }
        if step < tol.convergence_eps {
            return Separation {
                distance: best.0,
                converged: true,
                iterations: it,
                witnesses: (best.1, best.2),
            };
        }
    }
    Separation {
        distance: best.0,
        converged: false,
        iterations: tol.max_iterations,
        witnesses: (best.1, best.2),
    }
}

/// Classify a pair of placed disks as disjoint, touching (a single contact,
/// up to `tol.overlap_eps`) or overlapping (penetration deeper than
/// `tol.overlap_eps`).
pub fn overlap_status(p1: &PlacedDisk, p2: &PlacedDisk, tol: &ToleranceConfig) -> OverlapReport {
    if p1.center.distance(p2.center) > 2.0 + tol.overlap_eps {
        return OverlapReport {
            status: OverlapStatus::Disjoint,
            penetration: 0.0,
            converged: true,
        };
    }
    let penetration = penetration_depth(p1, p2, tol);
    if penetration > tol.overlap_eps {
        return OverlapReport {
            status: OverlapStatus::Overlapping,
            penetration,
            converged: true,
        };
    }
    let sep = min_distance(p1, p2, tol);
    let status = if sep.distance <= tol.overlap_eps {
        OverlapStatus::Touching
    } else {
        OverlapStatus::Disjoint
    };
    OverlapReport {
        status,
        penetration,
        converged: sep.converged,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Disk;

    fn placed(n: [f64; 3], c: [f64; 3]) -> PlacedDisk {
        Disk::new(n.into()).unwrap().at(c.into())
    }

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn projection_examples() {
        let d = placed([0.0, 0.0, 1.0], [0.0, 0.0, 0.0]);
        assert_eq!(project_point_to_disk(Vec3::new(0.0, 0.0, 5.0), &d), Vec3::ZERO);
        assert_eq!(
            project_point_to_disk(Vec3::new(3.0, 0.0, 0.0), &d),
            Vec3::new(1.0, 0.0, 0.0)
        );
        assert_eq!(
            project_point_to_disk(Vec3::new(0.5, 0.0, 2.0), &d),
            Vec3::new(0.5, 0.0, 0.0)
        );
    }

    #[test]
    fn distance_examples() {
        let a = placed([0.0, 0.0, 1.0], [0.0, 0.0, 0.0]);
        let b = placed([0.0, 0.0, 1.0], [0.0, 0.0, 3.0]);
        let s = min_distance(&a, &b, &tol());
        assert!(s.converged);
        assert!((s.distance - 3.0).abs() < 1e-12);
        assert_eq!(min_distance(&a, &a, &tol()).distance, 0.0);
        let c = placed([0.0, 0.0, 1.0], [3.0, 0.0, 0.0]);
        let s = min_distance(&a, &c, &tol());
        assert!((s.distance - 1.0).abs() < 1e-12);
        assert!(s.witnesses.0.distance(Vec3::new(1.0, 0.0, 0.0)) < 1e-9);
        assert!(s.witnesses.1.distance(Vec3::new(2.0, 0.0, 0.0)) < 1e-9);
    }

    #[test]
    fn perpendicular_disks_distance() {
        // Vertical disk hovering 0.5 above the horizontal one's center.
        let a = placed([0.0, 0.0, 1.0], [0.0, 0.0, 0.0]);
        let b = placed([1.0, 0.0, 0.0], [0.0, 0.0, 1.5]);
        let s = min_distance(&a, &b, &tol());
        assert!(s.converged);
        assert!((s.distance - 0.5).abs() < 1e-9, "{s:?}");
        let s = min_distance(&b, &a, &tol());
        assert!((s.distance - 0.5).abs() < 1e-9);
    }

    #[test]
    fn overlap_examples() {
        let a = placed([0.0, 0.0, 1.0], [0.0, 0.0, 0.0]);
        let st = |b: &PlacedDisk| overlap_status(&a, b, &tol()).status;
        assert_eq!(st(&placed([0.0, 0.0, 1.0], [0.0, 0.0, 1.0])), OverlapStatus::Disjoint);
        assert_eq!(st(&placed([0.0, 0.0, 1.0], [2.0, 0.0, 0.0])), OverlapStatus::Touching);
        assert_eq!(
            st(&placed([0.0, 0.0, 1.0], [1.0, 0.0, 0.0])),
            OverlapStatus::Overlapping
        );
    }

    #[test]
    fn crossing_disks() {
        let a = placed([0.0, 0.0, 1.0], [0.0, 0.0, 0.0]);
        // Vertical disk through a's center: deep overlap.
        let b = placed([1.0, 0.0, 0.0], [0.0, 0.0, 0.5]);
        let r = overlap_status(&a, &b, &tol());
        assert_eq!(r.status, OverlapStatus::Overlapping);
        assert!((r.penetration - 0.5).abs() < 1e-12, "{r:?}");
        // Lowest point of the vertical disk on a's center: single contact.
        let b = placed([1.0, 0.0, 0.0], [0.0, 0.0, 1.0]);
        assert_eq!(overlap_status(&a, &b, &tol()).status, OverlapStatus::Touching);
        // Vertical disk whose rim grazes a's rim from outside.
        let b = placed([1.0, 0.0, 0.0], [1.0, 0.0, 0.0]);
        assert_eq!(overlap_status(&a, &b, &tol()).status, OverlapStatus::Touching);
        let b = placed([1.0, 0.0, 0.0], [1.001, 0.0, 0.0]);
        assert_eq!(overlap_status(&a, &b, &tol()).status, OverlapStatus::Disjoint);
    }

    #[test]
    fn collinear_chords_touch_end_to_end() {
        // Both planes contain z; chords are unit segments along z meeting at 0.
        let s = 0.5f64.sqrt();
        let a = placed([1.0, 0.0, 0.0], [0.0, 0.0, 0.0]);
        let b = placed([s, s, 0.0], [0.0, 0.0, 2.0]);
        assert_eq!(overlap_status(&a, &b, &tol()).status, OverlapStatus::Touching);
        let b = placed([s, s, 0.0], [0.0, 0.0, 1.9]);
        assert_eq!(overlap_status(&a, &b, &tol()).status, OverlapStatus::Overlapping);
        let b = placed([s, s, 0.0], [0.0, 0.0, 2.1]);
        let r = overlap_status(&a, &b, &tol());
        assert_eq!(r.status, OverlapStatus::Disjoint);
        assert!((min_distance(&a, &b, &tol()).distance - 0.1).abs() < 1e-9);
    }
}
