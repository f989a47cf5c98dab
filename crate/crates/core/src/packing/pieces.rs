use crate::error::{Error, Result};
use crate::geometry::{Box3, PlacedDisk};
use crate::stabbing::Stabbing;

/// A consecutive run of a stabbing: member indices into the placement list
/// and the tight box around them (`None` when empty).
#[derive(Clone, Debug, PartialEq)]
pub struct Piece {
    pub members: Vec<usize>,
    pub bbox: Option<Box3>,
}

/// Split a realized stabbing into `k` pieces of equal length `L/k`. A disk at
/// offset `t` goes to piece `⌊t·k/L⌋`, clamped to `k − 1`.
pub fn cut_into_pieces(
    stabbing: &Stabbing,
    placements: &[PlacedDisk],
    k: usize,
) -> Result<Vec<Piece>> {
    if k == 0 {
        return Err(Error::InvalidInput("piece count must be at least 1".into()));
    }
    if placements.len() != stabbing.ordering.len() {
        return Err(Error::InvalidInput(format!(
            "{} placements for a stabbing of {} disks",
            placements.len(),
            stabbing.ordering.len()
        )));
    }
    let mut members = vec![Vec::new(); k];
    let length = stabbing.length;
    for (&disk, &t) in stabbing.ordering.as_slice().iter().zip(&stabbing.offsets) {
        let j = if length > 0.0 {
            ((t * k as f64 / length).floor() as usize).min(k - 1)
        } else {
            0
        };
        members[j].push(disk);
    }
    Ok(members
        .into_iter()
        .map(|m| {
            let bbox = Box3::enclosing(m.iter().map(|&i| &placements[i]));
            Piece { members: m, bbox }
        })
        .collect())
}
