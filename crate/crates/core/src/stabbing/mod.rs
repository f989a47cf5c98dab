//! Stabbing: put every disk's center on one line so that consecutive disks
//! touch, choosing the order that keeps the line short.
//!
//! The length of an order is a Hamiltonian path length in the s-distance
//! metric, so this is a shortest-path problem on a complete metric graph.

mod christofides;
mod held_karp;
pub mod matching;
mod matrix;
mod mst;
mod realize;

use serde::{Deserialize, Serialize};

pub use christofides::christofides_path;
pub use held_karp::{held_karp_path, HELD_KARP_LIMIT, HELD_KARP_MAX};
pub use matrix::{build_distance_matrix, build_distance_matrix_with, DistanceMatrix};
pub use mst::{mst, SpanningTree};
pub use realize::{realize_stabbing, Ordering, Stabbing};

use crate::error::Result;

/// Which path solver produced an ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathSolver {
    Exact,
    Christofides,
}

/// Exact solver up to `exact_threshold` vertices, Christofides beyond.
pub fn solve_path(matrix: &DistanceMatrix, exact_threshold: usize) -> Result<(Ordering, PathSolver)> {
    if matrix.len() <= exact_threshold.min(HELD_KARP_MAX) {
        Ok((held_karp_path(matrix, exact_threshold)?, PathSolver::Exact))
    } else {
        Ok((christofides_path(matrix)?, PathSolver::Christofides))
    }
}
