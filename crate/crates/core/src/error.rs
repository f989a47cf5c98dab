use thiserror::Error;

use crate::geometry::{Disk, UnitVec3};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// No contact candidate survived validation; the predicate tolerances are
    /// too tight (or too loose) for this configuration.
    #[error("geometry error: no validated contact for disks {d1:?} / {d2:?} along {s:?}")]
    Geometry { d1: Disk, d2: Disk, s: UnitVec3 },

    #[error("geometry error between disks {i} and {j}: {source}")]
    PairGeometry {
        i: usize,
        j: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("instance of size {n} exceeds the exact solver limit {limit}")]
    SizeExceeded { n: usize, limit: usize },

    #[error("malformed document: {0}")]
    Malformed(String),

    #[error("duplicate disk: entries {first} and {second} describe the same disk")]
    DuplicateDisk { first: usize, second: usize },

    #[error("zero vector at entry {0}")]
    ZeroVector(usize),

    #[error("non-finite coordinate at entry {0}")]
    NonFinite(usize),

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable short code, used by the CLI and in error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "invalid-input",
            Error::Geometry { .. } | Error::PairGeometry { .. } => "geometry",
            Error::SizeExceeded { .. } => "size-exceeded",
            Error::Malformed(_) => "malformed",
            Error::DuplicateDisk { .. } => "duplicate-disk",
            Error::ZeroVector(_) => "zero-vector",
            Error::NonFinite(_) => "non-finite",
            Error::Internal(_) => "internal",
            Error::Io(_) => "io",
        }
    }

    pub fn is_geometry(&self) -> bool {
        matches!(self, Error::Geometry { .. } | Error::PairGeometry { .. })
    }
}
