//! Independent checks of packings, of the metric axioms, and of the growth
//! of the lower bound on sphere-grid instances.

mod growth;
mod metric;

use serde::{Deserialize, Serialize};

pub use growth::{growth_experiment, GrowthReport, GrowthRow};
pub use metric::{verify_metric, MetricViolation};

use crate::geometry::{overlap_status, OverlapStatus, PlacedDisk, ToleranceConfig};
use crate::packing::{PackingSolution, PACKING_FACTOR};
use crate::par::{self, Execution};

/// Largest tolerated protrusion of a disk outside its container.
pub const CONTAINMENT_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OffendingPair {
    pub i: usize,
    pub j: usize,
    pub penetration: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContainmentViolation {
    pub disk: usize,
    pub amount: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub worst_penetration: f64,
    pub worst_containment_violation: f64,
    pub offending_pairs: Vec<OffendingPair>,
    pub containment_violations: Vec<ContainmentViolation>,
    pub certified_ratio: Option<f64>,
    pub metric_violations: Vec<MetricViolation>,
    /// Number of pair (or triple) evaluations performed.
    pub checks: usize,
    pub notes: Vec<String>,
}

/// Check a packing from scratch: every pair that could touch is classified
/// with the overlap predicate, and every disk's extent is tested against the
/// container.
pub fn verify_packing(solution: &PackingSolution, tol: &ToleranceConfig) -> VerificationReport {
    verify_packing_with(solution, tol, Execution::default())
}

pub fn verify_packing_with(
    solution: &PackingSolution,
    tol: &ToleranceConfig,
    exec: Execution,
) -> VerificationReport {
    let mut notes = Vec::new();
    let r = solution.radius;
    if !(r.is_finite() && r > 0.0) {
        return VerificationReport {
            notes: vec![format!("invalid radius {r}")],
            ..Default::default()
        };
    }
    // Work in the unit-radius frame.
    let unit: Vec<PlacedDisk> = solution
        .placements
        .iter()
        .map(|p| p.disk.at(p.center * (1.0 / r)))
        .collect();
    let lo = solution.container.min_corner * (1.0 / r);
    let hi = (solution.container.min_corner + solution.container.dims) * (1.0 / r);

    // Candidate pairs: centers within 2 + overlap_eps along x.
    let n = unit.len();
    let mut by_x: Vec<usize> = (0..n).collect();
    by_x.sort_by(|&a, &b| unit[a].center.x.total_cmp(&unit[b].center.x).then(a.cmp(&b)));
    let reach = 2.0 + tol.overlap_eps;
    let per_disk = par::map_indexed(exec, n, |k| {
        let a = by_x[k];
        let mut found = Vec::new();
        let mut checks = 0usize;
        let mut worst = 0.0f64;
        for &b in &by_x[k + 1..] {
            if unit[b].center.x - unit[a].center.x > reach {
                break;
            }
            checks += 1;
            let rep = overlap_status(&unit[a], &unit[b], tol);
            worst = worst.max(rep.penetration);
            if rep.status == OverlapStatus::Overlapping {
                found.push(OffendingPair {
                    i: a.min(b),
                    j: a.max(b),
                    penetration: rep.penetration,
                });
            }
        }
        (found, checks, worst)
    });
    let mut offending_pairs = Vec::new();
    let mut checks = 0;
    let mut worst_penetration = 0.0f64;
    for (found, c, w) in per_disk {
        offending_pairs.extend(found);
        checks += c;
        worst_penetration = worst_penetration.max(w);
    }
    offending_pairs.sort_by_key(|p| (p.i, p.j));

    let mut containment_violations = Vec::new();
    let mut worst_containment_violation = 0.0f64;
    for (i, p) in unit.iter().enumerate() {
        let h = p.half_extent();
        let mut amount = 0.0f64;
        for axis in 0..3 {
            amount = amount
                .max(lo[axis] - (p.center[axis] - h[axis]))
                .max(p.center[axis] + h[axis] - hi[axis]);
        }
        // Report in the solution's own length unit.
        let amount = amount * r;
        worst_containment_violation = worst_containment_violation.max(amount);
        if amount > CONTAINMENT_SLACK {
            containment_violations.push(ContainmentViolation { disk: i, amount });
        }
    }

    let lb = solution.stats.lower_bound.value;
    let volume = solution.container.volume();
    let certified_ratio = (lb > 0.0).then(|| volume / lb);
    if let Some(ratio) = certified_ratio {
        if ratio > PACKING_FACTOR * (1.0 + 1e-9) {
            notes.push(format!("certified ratio {ratio} exceeds {PACKING_FACTOR}"));
        }
    }
    if !offending_pairs.is_empty() {
        notes.push(format!("{} overlapping pairs", offending_pairs.len()));
    }
    if !containment_violations.is_empty() {
        notes.push(format!("{} disks leave the container", containment_violations.len()));
    }
    VerificationReport {
        passed: offending_pairs.is_empty() && containment_violations.is_empty(),
        worst_penetration,
        worst_containment_violation,
        offending_pairs,
        containment_violations,
        certified_ratio,
        metric_violations: Vec::new(),
        checks,
        notes,
    }
}
