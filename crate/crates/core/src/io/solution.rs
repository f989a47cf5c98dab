use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::packing::{PackingSolution, PACKING_FACTOR};

/// Volume certificate as written next to a solution.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub factor: f64,
    pub volume: f64,
    pub lower_bound: f64,
    pub ratio: Option<f64>,
    pub holds: bool,
}

impl Certificate {
    pub fn of(solution: &PackingSolution) -> Self {
        let st = &solution.stats;
        Certificate {
            factor: PACKING_FACTOR,
            volume: st.volume,
            lower_bound: st.lower_bound.value,
            ratio: st.certified_ratio,
            holds: st.certificate_holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionDocument {
    /// `Some(result)` when the solution was checked before writing.
    pub verified: Option<bool>,
    pub certificate: Certificate,
    #[serde(flatten)]
    pub solution: PackingSolution,
}

pub fn write_solution(solution: &PackingSolution, verified: Option<bool>) -> Vec<u8> {
    let doc = SolutionDocument {
        verified,
        certificate: Certificate::of(solution),
        solution: solution.clone(),
    };
    let mut out = serde_json::to_vec_pretty(&doc).expect("solution serializes");
    out.push(b'\n');
    out
}

pub fn read_solution(bytes: &[u8]) -> Result<SolutionDocument> {
    serde_json::from_slice(bytes).map_err(|e| Error::Malformed(e.to_string()))
}
