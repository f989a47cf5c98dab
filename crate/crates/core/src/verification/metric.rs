use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::VerificationReport;
use crate::geometry::{angle_lower_bound, s_distance, Disk, ToleranceConfig, UnitVec3};

/// Slack of every metric check.
pub const METRIC_SLACK: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricViolation {
    pub kind: String,
    pub disks: [usize; 3],
    pub distances: [f64; 3],
}

/// Sample `trials` random triples from `disks` and check symmetry, the
/// triangle inequality, `d_s ≥ sin ξ` (ξ the angle between normals) and
/// `d_s ≤ 2`, each within [`METRIC_SLACK`].
pub fn verify_metric(
    disks: &[Disk],
    s: UnitVec3,
    trials: usize,
    seed: u64,
    tol: &ToleranceConfig,
) -> VerificationReport {
    let mut report = VerificationReport { passed: true, ..Default::default() };
    if disks.len() < 3 || trials == 0 {
        report.passed = false;
        report.notes.push("need at least 3 disks and 1 trial".into());
        return report;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = disks.len();
    for _ in 0..trials {
        let a = rng.random_range(0..n);
        let mut b = rng.random_range(0..n - 1);
        if b >= a {
            b += 1;
        }
        let mut c = rng.random_range(0..n);
        while c == a || c == b {
            c = rng.random_range(0..n);
        }
        let idx = [a, b, c];
        let d = |i: usize, j: usize| s_distance(&disks[i], &disks[j], s, tol);
        let (ab, ba, bc, cb, ac) = match (d(a, b), d(b, a), d(b, c), d(c, b), d(a, c)) {
            (Ok(ab), Ok(ba), Ok(bc), Ok(cb), Ok(ac)) => (ab, ba, bc, cb, ac),
            _ => {
                report.metric_violations.push(MetricViolation {
                    kind: "geometry-error".into(),
                    disks: idx,
                    distances: [f64::NAN; 3],
                });
                continue;
            }
        };
        report.checks += 1;
        let distances = [ab, bc, ac];
        let mut flag = |kind: &str| {
            report.metric_violations.push(MetricViolation {
                kind: kind.into(),
                disks: idx,
                distances,
            });
        };
        if (ab - ba).abs() > METRIC_SLACK || (bc - cb).abs() > METRIC_SLACK {
            flag("symmetry");
        }
        if ac > ab + bc + METRIC_SLACK || ab > ac + bc + METRIC_SLACK || bc > ab + ac + METRIC_SLACK {
            flag("triangle");
        }
        let pairs = [(a, b, ab), (b, c, bc), (a, c, ac)];
        if pairs
            .iter()
            .any(|&(i, j, v)| v < angle_lower_bound(&disks[i], &disks[j]) - METRIC_SLACK)
        {
            flag("angle-bound");
        }
        if distances.iter().any(|&v| !(0.0..=2.0 + METRIC_SLACK).contains(&v)) {
            flag("range");
        }
    }
    report.passed = report.metric_violations.is_empty();
    if !report.passed {
        report.notes.push(format!("{} metric violations", report.metric_violations.len()));
    }
    report
}
