//! The s-distance between two unit disks: the center distance at which the
//! disks touch when the second center sits in direction `s` from the first.
//!
//! With the contact point `p` at the origin both disk planes pass through `p`
//! and meet in a line `ℓ`. Either one disk is tangent to `ℓ` at `p` and the
//! other contains `p` (the two tangent cases), or both rims pass through `p`
//! and the disks meet `ℓ` in abutting chords (the rim case). The tangent
//! cases are closed-form; the rim case is a one-dimensional root search over
//! the circle of possible centers. Every candidate is checked with
//! [`overlap_status`] before it is accepted.

use std::f64::consts::TAU;

use super::{angle_between, disks_identical, overlap_status, Disk, OverlapStatus, ToleranceConfig, UnitVec3, Vec3};
use crate::error::{Error, Result};

/// Samples of the center circle scanned for sign changes in the rim case.
const RIM_SAMPLES: usize = 256;
/// `|n·s|` below this means `s` lies in the disk plane.
const IN_PLANE: f64 = 1e-12;
/// Below this `|n₁ × n₂|` the overlap predicates can no longer resolve the
/// contact, and tangent-case candidates are accepted on their own checks.
const NEAR_PARALLEL_SIN: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ContactCase {
    Identical,
    /// The first disk is tangent to the planes' common line at the contact.
    FirstTangent,
    /// The second disk is tangent to the planes' common line at the contact.
    SecondTangent,
    /// Both rims pass through the contact point.
    RimToRim,
    /// `s` lies in both planes; the disks meet end to end along `s`.
    InBothPlanes,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SDistance {
    pub value: f64,
    pub case: ContactCase,
    /// More than one candidate validated and they differ by more than
    /// `predicate_eps`. The largest is reported.
    pub ambiguous: bool,
}

/// `d_s(d1, d2)`; see [`s_distance_detailed`].
pub fn s_distance(d1: &Disk, d2: &Disk, s: UnitVec3, tol: &ToleranceConfig) -> Result<f64> {
    s_distance_detailed(d1, d2, s, tol).map(|r| r.value)
}

pub fn s_distance_detailed(
    d1: &Disk,
    d2: &Disk,
    s: UnitVec3,
    tol: &ToleranceConfig,
) -> Result<SDistance> {
    if disks_identical(d1, d2) {
        return Ok(SDistance {
            value: 0.0,
            case: ContactCase::Identical,
            ambiguous: false,
        });
    }
    let ctx = Contact::new(d1, d2, s);
    let slack = 1.0 + tol.predicate_eps;

    let tangent = ctx.tangent_candidates(slack);
    if ctx.sin < NEAR_PARALLEL_SIN {
        if let Some(best) = pick(tangent.iter().copied(), tol) {
            return Ok(best);
        }
    }
    let valid = tangent.into_iter().filter(|c| ctx.touches(c.value, tol));
    if let Some(best) = pick(valid, tol) {
        return Ok(best);
    }

    let rim = if ctx.ns1.abs() < IN_PLANE && ctx.ns2.abs() < IN_PLANE {
        // Both chords are diameters on the line through the centers.
        vec![SDistance {
            value: 2.0,
            case: ContactCase::InBothPlanes,
            ambiguous: false,
        }]
    } else {
        ctx.rim_candidates()
    };
    let valid = rim.into_iter().filter(|c| ctx.touches(c.value, tol));
    pick(valid, tol).ok_or(Error::Geometry {
        d1: *d1,
        d2: *d2,
        s,
    })
}

fn pick(cands: impl Iterator<Item = SDistance>, tol: &ToleranceConfig) -> Option<SDistance> {
    let cands: Vec<_> = cands.collect();
    let best = cands.iter().copied().max_by(|a, b| a.value.total_cmp(&b.value))?;
    let lowest = cands.iter().map(|c| c.value).fold(f64::INFINITY, f64::min);
    Some(SDistance {
        ambiguous: best.value - lowest > tol.predicate_eps,
        ..best
    })
}

/// Frame for one (d1, d2, s) query, contact point at the origin.
struct Contact {
    d1: Disk,
    d2: Disk,
    n1: Vec3,
    n2: Vec3,
    s: Vec3,
    /// Unit direction of the planes' common line.
    line: Vec3,
    sin: f64,
    ns1: f64,
    ns2: f64,
}

impl Contact {
    fn new(d1: &Disk, d2: &Disk, s: UnitVec3) -> Self {
        let (n1, n2, s) = (d1.normal(), d2.normal(), s.get());
        let cross = n1.cross(n2);
        let sin = cross.norm();
        Contact {
            d1: *d1,
            d2: *d2,
            n1,
            n2,
            s,
            line: cross.scale(1.0 / sin),
            sin,
            ns1: n1.dot(s),
            ns2: n2.dot(s),
        }
    }

    /// Both tangent cases, both orientations of the tangent disk.
    fn tangent_candidates(&self, slack: f64) -> Vec<SDistance> {
        let mut out = Vec::new();
        let u1 = self.n1.cross(self.line);
        let u2 = self.n2.cross(self.line);
        for sign in [1.0, -1.0] {
            if self.ns2.abs() >= IN_PLANE {
                // c1 on the rim, perpendicular to the line; c2 in plane 2.
                let c1 = u1.scale(sign);
                let t = -self.n2.dot(c1) / self.ns2;
                if t > 0.0 && (c1 + self.s.scale(t)).norm() <= slack {
                    out.push(SDistance {
                        value: t,
                        case: ContactCase::FirstTangent,
                        ambiguous: false,
                    });
                }
            }
            if self.ns1.abs() >= IN_PLANE {
                let c2 = u2.scale(sign);
                let t = self.n1.dot(c2) / self.ns1;
                if t > 0.0 && (c2 - self.s.scale(t)).norm() <= slack {
                    out.push(SDistance {
                        value: t,
                        case: ContactCase::SecondTangent,
                        ambiguous: false,
                    });
                }
            }
        }
        out
    }

    /// Rim case: one center runs over the unit circle around the contact in
    /// its plane; the other is its shift along `s` into the other plane, and
    /// must also lie at distance one from the contact. The shift lands on the
    /// elliptic cylinder over the first disk's rim.
    fn rim_candidates(&self) -> Vec<SDistance> {
        // The shift divides by the partner's |n·s|; walk the circle whose
        // partner has the larger one.
        let walk_second = self.ns1.abs() >= self.ns2.abs();
        let (n_walk, n_other, ns_other) = if walk_second {
            (self.n2, self.n1, self.ns1)
        } else {
            (self.n1, self.n2, self.ns2)
        };
        let e = self.line;
        let f = n_walk.cross(e);
        let s = self.s;
        let center = |theta: f64| e.scale(theta.cos()) + f.scale(theta.sin());
        // Signed shift from the walked center to the other plane along s.
        let shift = |c: Vec3| -n_other.dot(c) / ns_other;
        let g = |theta: f64| {
            let c = center(theta);
            (c + s.scale(shift(c))).norm_squared() - 1.0
        };

        let roots = circle_roots(&g);
        roots
            .into_iter()
            .filter_map(|theta| {
                let c = center(theta);
                let k = shift(c);
                // walk_second: c is c2 and c1 = c2 + k s, so t = -k.
                let t = if walk_second { -k } else { k };
                (t > 0.0).then_some(SDistance {
                    value: t,
                    case: ContactCase::RimToRim,
                    ambiguous: false,
                })
            })
            .collect()
    }

    /// Does placing the second disk at `t·s` from the first give a single
    /// contact?
    fn touches(&self, t: f64, tol: &ToleranceConfig) -> bool {
        let p1 = self.d1.at(Vec3::ZERO);
        let p2 = self.d2.at(self.s.scale(t));
        overlap_status(&p1, &p2, tol).status == OverlapStatus::Touching
    }
}

/// Roots of a smooth `2π`-periodic function: sign changes on a fixed grid,
/// refined by bisection, plus near-tangential roots found by minimizing
/// `|g|` around sampled extrema that stay on one side of zero.
fn circle_roots(g: &impl Fn(f64) -> f64) -> Vec<f64> {
    let step = TAU / RIM_SAMPLES as f64;
    let thetas: Vec<f64> = (0..RIM_SAMPLES).map(|k| k as f64 * step).collect();
    let vals: Vec<f64> = thetas.iter().map(|&t| g(t)).collect();
    let mut roots = Vec::new();
    for k in 0..RIM_SAMPLES {
        let (a, b) = (thetas[k], thetas[k] + step);
        let (ga, gb) = (vals[k], vals[(k + 1) % RIM_SAMPLES]);
        if ga == 0.0 {
            roots.push(a);
        } else if ga.signum() != gb.signum() && gb != 0.0 {
            roots.push(bisect(g, a, b, ga));
        }
    }
    for k in 0..RIM_SAMPLES {
        let prev = vals[(k + RIM_SAMPLES - 1) % RIM_SAMPLES];
        let next = vals[(k + 1) % RIM_SAMPLES];
        let here = vals[k];
        let side = here.signum();
        if prev.signum() != side || next.signum() != side {
            continue;
        }
        // Extremum of |g| pointing toward zero.
        if here.abs() > prev.abs() || here.abs() > next.abs() {
            continue;
        }
        let (lo, hi) = (thetas[k] - step, thetas[k] + step);
        let toward_zero = |t: f64| g(t) * side;
        let m = golden_min(&toward_zero, lo, hi);
        let gm = g(m);
        if gm.signum() != side || gm == 0.0 {
            // The extremum dips through zero: two roots inside the bracket.
            roots.push(bisect(g, lo, m, g(lo)));
            roots.push(bisect(g, m, hi, gm));
        } else if gm.abs() < 1e-9 {
            roots.push(m);
        }
    }
    roots
}

fn bisect(g: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, mut ga: f64) -> f64 {
    for _ in 0..100 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let gm = g(m);
        if gm == 0.0 {
            return m;
        }
        if gm.signum() == ga.signum() {
            a = m;
            ga = gm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() < 1e-15 {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Lower bound on the s-distance from the angle between the normals:
/// `d_s ≥ sin ξ`.
pub fn angle_lower_bound(d1: &Disk, d2: &Disk) -> f64 {
    angle_between(d1, d2).sin()
}
