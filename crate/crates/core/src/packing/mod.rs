//! Packing by stabbing: classify disks by nearest axis, stab each class along
//! its axis, cut the stabbings into pieces and assemble the pieces into one
//! box.
//!
//! The class with the longest stabbing is laid along the container's second
//! axis (the y-role). Its six pieces are stacked along the z-role. The other
//! two stabbings are cut into `3m` pieces each, with
//! `m = ⌊(L_y/6 + E_y)/E_y⌋`. The x-role pieces form three layers of `m`
//! boxes beside the y-assembly. The z-role pieces form three columns of `m`
//! boxes above the x-role layers. The roles are a relabeling of the
//! coordinate axes, recorded in [`AxisPermutation`].

mod bounds;
mod classify;
mod pieces;

use serde::{Deserialize, Serialize};

pub use bounds::{
    lower_bound, shape_packing_factor, LowerBound, PACKING_FACTOR, STAB_PER_VOLUME,
};
pub use classify::{axis_class, classify, global_extent, AxisClass, ClassifiedInput};
pub use pieces::{cut_into_pieces, Piece};

use crate::error::{Error, Result};
use crate::geometry::{disks_identical, Box3, Disk, PlacedDisk, ToleranceConfig, UnitVec3, Vec3};
use crate::par::{self, Execution};
use crate::stabbing::{
    build_distance_matrix_with, mst, realize_stabbing, solve_path, PathSolver, Stabbing,
    HELD_KARP_MAX,
};

/// Relative slack of the volume certificate.
const CERTIFICATE_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverConfig {
    /// Classes with at most this many disks are stabbed exactly.
    pub exact_threshold: usize,
    pub execution: Execution,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            exact_threshold: 12,
            execution: Execution::default(),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.exact_threshold > HELD_KARP_MAX {
            return Err(Error::InvalidInput(format!(
                "exact threshold {} exceeds {HELD_KARP_MAX}",
                self.exact_threshold
            )));
        }
        Ok(())
    }
}

/// `role_axes[r]` is the original axis playing role `r` (0 = x, 1 = y,
/// 2 = z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisPermutation {
    pub role_axes: [usize; 3],
}

impl AxisPermutation {
    pub const IDENTITY: AxisPermutation = AxisPermutation { role_axes: [0, 1, 2] };

    pub fn new(role_axes: [usize; 3]) -> Result<Self> {
        let mut sorted = role_axes;
        sorted.sort_unstable();
        if sorted != [0, 1, 2] {
            return Err(Error::InvalidInput(format!("{role_axes:?} is not a permutation")));
        }
        Ok(AxisPermutation { role_axes })
    }

    /// Original coordinates to role coordinates.
    pub fn to_role(&self, v: Vec3) -> Vec3 {
        let [a, b, c] = self.role_axes;
        Vec3::new(v[a], v[b], v[c])
    }

    /// Role coordinates to original coordinates.
    pub fn from_role(&self, v: Vec3) -> Vec3 {
        let mut out = Vec3::ZERO;
        for r in 0..3 {
            out[self.role_axes[r]] = v[r];
        }
        out
    }

    /// Role order: longest stabbing as y, then x, then z. Empty classes come
    /// after nonempty ones of equal length; remaining ties go to the lower axis.
    fn from_lengths(lengths: [f64; 3], sizes: [usize; 3]) -> Self {
        let mut axes = [0, 1, 2];
        axes.sort_by(|&a, &b| {
            lengths[b]
                .total_cmp(&lengths[a])
                .then((sizes[a] == 0).cmp(&(sizes[b] == 0)))
                .then(a.cmp(&b))
        });
        AxisPermutation { role_axes: [axes[1], axes[0], axes[2]] }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Layout {
    /// One nonempty class: the stabbing's own bounding box.
    SingleClass { axis: AxisClass },
    /// The three-assembly construction.
    Assemblies,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingStats {
    pub layout: Layout,
    /// Per original axis.
    pub class_sizes: [usize; 3],
    /// Stabbing lengths per original axis (0 for empty classes).
    pub lengths: [f64; 3],
    pub solvers: [Option<PathSolver>; 3],
    /// Global extent in the original frame.
    pub extent: Vec3,
    /// Extent and lengths in the role frame.
    pub role_extent: Vec3,
    pub role_lengths: [f64; 3],
    pub m: Option<usize>,
    /// Pieces per role, x then y then z.
    pub piece_counts: Option<[usize; 3]>,
    pub lower_bound: LowerBound,
    pub volume: f64,
    /// `volume / lower_bound`; `None` when both vanish (a single disk).
    pub certified_ratio: Option<f64>,
    /// `volume ≤ 284 · lower_bound`.
    pub certificate_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackingSolution {
    pub container: Box3,
    /// One per input disk, in input order.
    pub placements: Vec<PlacedDisk>,
    /// Disk radius; 1 unless produced by [`pack_congruent_shapes`].
    #[serde(default = "unit_radius")]
    pub radius: f64,
    pub permutation: AxisPermutation,
    pub stats: PackingStats,
}

fn unit_radius() -> f64 {
    1.0
}

/// One class stabbed along its axis.
struct ClassStab {
    members: Vec<usize>,
    stabbing: Stabbing,
    /// Placements in class-local order.
    placements: Vec<PlacedDisk>,
    solver: PathSolver,
    /// Lower bound on the optimal stabbing length of the class.
    path_bound: f64,
}

fn stab_class(
    disks: &[Disk],
    members: &[usize],
    axis: usize,
    config: &SolverConfig,
    tol: &ToleranceConfig,
) -> Result<ClassStab> {
    let local: Vec<Disk> = members.iter().map(|&i| disks[i]).collect();
    let s = UnitVec3::axis(axis);
    let matrix = build_distance_matrix_with(&local, s, tol, config.execution).map_err(|e| {
        // Report pair indices in input numbering.
        match e {
            Error::PairGeometry { i, j, source } => Error::PairGeometry {
                i: members[i],
                j: members[j],
                source,
            },
            other => other,
        }
    })?;
    let (ordering, solver) = solve_path(&matrix, config.exact_threshold)?;
    let tree_weight = mst(&matrix).weight;
    let path_bound = match solver {
        // An exact path is itself the optimum.
        PathSolver::Exact => tree_weight.max(matrix.path_length(ordering.as_slice())),
        PathSolver::Christofides => tree_weight,
    };
    let (stabbing, placements) = realize_stabbing(&local, &ordering, s, tol)?;
    Ok(ClassStab {
        members: members.to_vec(),
        stabbing,
        placements,
        solver,
        path_bound,
    })
}

fn check_distinct(disks: &[Disk]) -> Result<()> {
    for i in 0..disks.len() {
        for j in i + 1..disks.len() {
            if disks_identical(&disks[i], &disks[j]) {
                return Err(Error::DuplicateDisk { first: i, second: j });
            }
        }
    }
    Ok(())
}

fn certify(volume: f64, lower: &LowerBound) -> (Option<f64>, bool) {
    let ratio = if lower.value > 0.0 {
        Some(volume / lower.value)
    } else if volume == 0.0 {
        None
    } else {
        Some(f64::INFINITY)
    };
    let holds = volume <= PACKING_FACTOR * lower.value * (1.0 + CERTIFICATE_SLACK);
    (ratio, holds)
}

/// Translate placements so their tight box starts at the origin.
fn normalize(mut placements: Vec<PlacedDisk>) -> (Box3, Vec<PlacedDisk>) {
    let bbox = Box3::enclosing(&placements).expect("nonempty placement list");
    let shift = -bbox.min_corner;
    for p in &mut placements {
        *p = p.translated(shift);
    }
    let container = Box3::enclosing(&placements).expect("nonempty placement list");
    (container, placements)
}

/// Pack a set whose normals are all within φ₀ of `axis` by stabbing along it.
pub fn pack_single_class(
    disks: &[Disk],
    axis: AxisClass,
    config: &SolverConfig,
    tol: &ToleranceConfig,
) -> Result<PackingSolution> {
    if disks.is_empty() {
        return Err(Error::InvalidInput("empty instance".into()));
    }
    config.validate()?;
    tol.validate()?;
    check_distinct(disks)?;
    let members: Vec<usize> = (0..disks.len()).collect();
    let stab = stab_class(disks, &members, axis.index(), config, tol)?;
    let extent = global_extent(disks)?;
    let mut class_sizes = [0; 3];
    class_sizes[axis.index()] = disks.len();
    let mut lengths = [0.0; 3];
    lengths[axis.index()] = stab.stabbing.length;
    let mut solvers = [None; 3];
    solvers[axis.index()] = Some(stab.solver);
    let permutation = AxisPermutation::from_lengths(lengths, class_sizes);
    let lower = LowerBound::new(extent.x * extent.y * extent.z, stab.path_bound);

    let (container, placements) = normalize(stab.placements);
    let volume = container.volume();
    let (certified_ratio, certificate_holds) = certify(volume, &lower);
    let role_lengths = permutation.role_axes.map(|a| lengths[a]);
    Ok(PackingSolution {
        container,
        placements,
        radius: 1.0,
        permutation,
        stats: PackingStats {
            layout: Layout::SingleClass { axis },
            class_sizes,
            lengths,
            solvers,
            extent,
            role_extent: permutation.to_role(extent),
            role_lengths,
            m: None,
            piece_counts: None,
            lower_bound: lower,
            volume,
            certified_ratio,
            certificate_holds,
        },
    })
}

/// `m = ⌊(L_y/6 + E_y)/E_y⌋`, the number of slots along the y-role; at
/// least 1.
pub fn slot_count(length_y: f64, extent_y: f64) -> usize {
    if extent_y > 0.0 {
        (((length_y / 6.0 + extent_y) / extent_y).floor() as usize).max(1)
    } else {
        1
    }
}

/// Pack distinct unit disks into an axis-parallel box.
pub fn pack(disks: &[Disk], config: &SolverConfig, tol: &ToleranceConfig) -> Result<PackingSolution> {
    if disks.is_empty() {
        return Err(Error::InvalidInput("empty instance".into()));
    }
    config.validate()?;
    tol.validate()?;
    let classes = classify(disks);
    if classes.nonempty_count() == 1 {
        let c = AxisClass::ALL
            .into_iter()
            .find(|&c| !classes.class(c).is_empty())
            .expect("one nonempty class");
        return pack_single_class(disks, c, config, tol);
    }
    check_distinct(disks)?;

    let stabs: Vec<Option<ClassStab>> = par::map_indexed(config.execution, 3, |a| {
        let members = &classes.classes[a];
        (!members.is_empty()).then(|| stab_class(disks, members, a, config, tol))
    })
    .into_iter()
    .map(Option::transpose)
    .collect::<Result<_>>()?;

    let class_sizes = classes.classes.each_ref().map(Vec::len);
    let lengths = [0, 1, 2].map(|a| stabs[a].as_ref().map_or(0.0, |s| s.stabbing.length));
    let solvers = [0, 1, 2].map(|a| stabs[a].as_ref().map(|s| s.solver));
    let path_bound = stabs.iter().flatten().map(|s| s.path_bound).fold(0.0, f64::max);
    let extent = global_extent(disks)?;
    let lower = LowerBound::new(extent.x * extent.y * extent.z, path_bound);
    let perm = AxisPermutation::from_lengths(lengths, class_sizes);
    let role_extent = perm.to_role(extent);
    let role_lengths = perm.role_axes.map(|a| lengths[a]);

    let m = slot_count(role_lengths[1], role_extent.y);
    let piece_counts = [3 * m, 6, 3 * m];

    let mut placed: Vec<Option<PlacedDisk>> = vec![None; disks.len()];
    let cut = |role: usize| -> Result<Vec<(usize, Piece)>> {
        let Some(stab) = &stabs[perm.role_axes[role]] else {
            return Ok(Vec::new());
        };
        let pieces = cut_into_pieces(&stab.stabbing, &stab.placements, piece_counts[role])?;
        Ok(pieces
            .into_iter()
            .enumerate()
            .filter(|(_, p)| !p.members.is_empty())
            .collect())
    };
    let y_pieces = cut(1)?;
    let x_pieces = cut(0)?;
    let z_pieces = cut(2)?;
    let role_dims = |p: &Piece| perm.to_role(p.bbox.expect("nonempty piece").dims);
    let cell = |pieces: &[(usize, Piece)]| {
        pieces
            .iter()
            .fold(Vec3::ZERO, |acc, (_, p)| acc.max(role_dims(p)))
    };
    let mut put = |role: usize, piece: &Piece, target: Vec3| {
        let stab = stabs[perm.role_axes[role]].as_ref().expect("class of a nonempty piece");
        let shift = perm.from_role(target) - piece.bbox.expect("nonempty piece").min_corner;
        for &local in &piece.members {
            placed[stab.members[local]] = Some(stab.placements[local].translated(shift));
        }
    };

    // y-role: six pieces stacked along z.
    let mut y_width = 0.0f64;
    let mut z_cursor = 0.0;
    for (_, piece) in &y_pieces {
        let d = role_dims(piece);
        put(1, piece, Vec3::new(0.0, 0.0, z_cursor));
        z_cursor += d.z;
        y_width = y_width.max(d.x);
    }
    // x-role: three layers along z, m slots along y, beside the y-assembly.
    let x_cell = cell(&x_pieces);
    let mut x_height = 0.0f64;
    for (j, piece) in &x_pieces {
        let (layer, slot) = ((j / m) as f64, (j % m) as f64);
        put(0, piece, Vec3::new(y_width, slot * x_cell.y, layer * x_cell.z));
        x_height = x_height.max(layer * x_cell.z + role_dims(piece).z);
    }
    // z-role: three columns along x, m slots along y, above the x-assembly.
    let z_cell = cell(&z_pieces);
    for (j, piece) in &z_pieces {
        let (column, slot) = ((j / m) as f64, (j % m) as f64);
        put(2, piece, Vec3::new(y_width + column * z_cell.x, slot * z_cell.y, x_height));
    }

    let placements: Vec<PlacedDisk> = placed
        .into_iter()
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("a disk was left unplaced".into()))?;
    let (container, placements) = normalize(placements);
    let volume = container.volume();
    let (certified_ratio, certificate_holds) = certify(volume, &lower);
    Ok(PackingSolution {
        container,
        placements,
        radius: 1.0,
        permutation: perm,
        stats: PackingStats {
            layout: Layout::Assemblies,
            class_sizes,
            lengths,
            solvers,
            extent,
            role_extent,
            role_lengths,
            m: Some(m),
            piece_counts: Some(piece_counts),
            lower_bound: lower,
            volume,
            certified_ratio,
            certificate_holds,
        },
    })
}

/// Pack congruent disks of radius `radius` with the given normals: pack the
/// unit problem and scale the result.
pub fn pack_congruent_shapes(
    normals: &[Disk],
    radius: f64,
    config: &SolverConfig,
    tol: &ToleranceConfig,
) -> Result<PackingSolution> {
    if !radius.is_finite() || radius <= 0.0 {
        return Err(Error::InvalidInput(format!("radius must be positive, got {radius}")));
    }
    let mut sol = pack(normals, config, tol)?;
    if radius == 1.0 {
        return Ok(sol);
    }
    sol.container = Box3 {
        min_corner: sol.container.min_corner * radius,
        dims: sol.container.dims * radius,
    };
    for p in &mut sol.placements {
        p.center = p.center * radius;
    }
    sol.radius = radius;
    let st = &mut sol.stats;
    let r3 = radius * radius * radius;
    st.lengths = st.lengths.map(|l| l * radius);
    st.role_lengths = st.role_lengths.map(|l| l * radius);
    st.extent = st.extent * radius;
    st.role_extent = st.role_extent * radius;
    st.volume = sol.container.volume();
    st.lower_bound = LowerBound {
        extent_bound: st.lower_bound.extent_bound * r3,
        stab_bound: st.lower_bound.stab_bound * r3,
        value: st.lower_bound.value * r3,
    };
    Ok(sol)
}
