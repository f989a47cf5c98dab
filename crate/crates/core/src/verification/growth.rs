use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{ToleranceConfig, UnitVec3};
use crate::io::gen_sphere_grid;
use crate::packing::{pack, LowerBound, SolverConfig};
use crate::stabbing::{build_distance_matrix_with, mst, solve_path, PathSolver};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: usize,
    pub epsilon: f64,
    /// Smallest pairwise s-distance along z.
    pub min_distance: f64,
    /// Lower bound on the optimal stabbing length along z: the exact optimum
    /// when the exact solver ran, otherwise the spanning tree weight.
    pub stab_length_bound: f64,
    pub path_solver: PathSolver,
    pub lower_bound: LowerBound,
    pub packed_volume: f64,
    pub certified_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub c: f64,
    pub rows: Vec<GrowthRow>,
    /// Least-squares slope of log(lower bound) against log(n).
    pub lower_bound_slope: Option<f64>,
    /// Same for the stabbing-length bound.
    pub stab_bound_slope: Option<f64>,
}

fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.0 > 0.0 && p.1 > 0.0)
        .map(|p| (p.0.ln(), p.1.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// For each size, generate the sphere-grid instance, bound its optimal
/// stabbing length from below, and pack it.
pub fn growth_experiment(
    sizes: &[usize],
    c: f64,
    config: &SolverConfig,
    tol: &ToleranceConfig,
) -> Result<GrowthReport> {
    if sizes.is_empty() {
        return Err(Error::InvalidInput("no sizes given".into()));
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let inst = gen_sphere_grid(n, c)?;
        let z = UnitVec3::axis(2);
        let matrix = build_distance_matrix_with(&inst.disks, z, tol, config.execution)?;
        let mut min_distance = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                min_distance = min_distance.min(matrix.get(i, j));
            }
        }
        let tree = mst(&matrix).weight;
        let (order, path_solver) = solve_path(&matrix, config.exact_threshold)?;
        let stab_length_bound = match path_solver {
            PathSolver::Exact => matrix.path_length(order.as_slice()).max(tree),
            PathSolver::Christofides => tree,
        };
        let sol = pack(&inst.disks, config, tol)?;
        rows.push(GrowthRow {
            n,
            epsilon: c / (n as f64).sqrt(),
            min_distance: if n > 1 { min_distance } else { 0.0 },
            stab_length_bound,
            path_solver,
            lower_bound: sol.stats.lower_bound,
            packed_volume: sol.stats.volume,
            certified_ratio: sol.stats.certified_ratio,
        });
    }
    let lb: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.lower_bound.value)).collect();
    let sb: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.stab_length_bound)).collect();
    Ok(GrowthReport {
        c,
        lower_bound_slope: loglog_slope(&lb),
        stab_bound_slope: loglog_slope(&sb),
        rows,
    })
}
