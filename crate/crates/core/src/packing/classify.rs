use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Disk, Vec3};

/// Coordinate axis a disk's normal is closest to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisClass {
    X,
    Y,
    Z,
}

impl AxisClass {
    pub const ALL: [AxisClass; 3] = [AxisClass::X, AxisClass::Y, AxisClass::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> AxisClass {
        AxisClass::ALL[i]
    }

    pub fn name(self) -> &'static str {
        ["x", "y", "z"][self.index()]
    }
}

impl std::str::FromStr for AxisClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(AxisClass::X),
            "y" => Ok(AxisClass::Y),
            "z" => Ok(AxisClass::Z),
            _ => Err(Error::InvalidInput(format!("unknown axis {s:?}"))),
        }
    }
}

/// Disk indices grouped by class, each list increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedInput {
    pub classes: [Vec<usize>; 3],
}

impl ClassifiedInput {
    pub fn class(&self, c: AxisClass) -> &[usize] {
        &self.classes[c.index()]
    }

    pub fn nonempty_count(&self) -> usize {
        self.classes.iter().filter(|c| !c.is_empty()).count()
    }
}

/// Class of a single normal: largest |coordinate|, ties to the earlier axis.
pub fn axis_class(n: Vec3) -> AxisClass {
    let a = n.map(f64::abs);
    if a.x >= a.y && a.x >= a.z {
        AxisClass::X
    } else if a.y >= a.z {
        AxisClass::Y
    } else {
        AxisClass::Z
    }
}

pub fn classify(disks: &[Disk]) -> ClassifiedInput {
    let mut out = ClassifiedInput::default();
    for (i, d) in disks.iter().enumerate() {
        out.classes[axis_class(d.normal()).index()].push(i);
    }
    out
}

/// Componentwise maximum extent over all disks.
pub fn global_extent(disks: &[Disk]) -> Result<Vec3> {
    if disks.is_empty() {
        return Err(Error::InvalidInput("extent of an empty disk set".into()));
    }
    Ok(disks.iter().fold(Vec3::ZERO, |acc, d| acc.max(d.extent())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disk(x: f64, y: f64, z: f64) -> Disk {
        Disk::new(Vec3::new(x, y, z)).unwrap()
    }

    #[test]
    fn nearest_axis() {
        let d = [disk(0.9, 0.1, 0.2), disk(1.0, 1.0, 1.0), disk(0.0, 0.0, 1.0), disk(0.1, -0.8, 0.3)];
        let c = classify(&d);
        assert_eq!(c.class(AxisClass::X), &[0, 1]);
        assert_eq!(c.class(AxisClass::Y), &[3]);
        assert_eq!(c.class(AxisClass::Z), &[2]);
        assert_eq!(c.nonempty_count(), 3);
    }

    #[test]
    fn two_way_tie_prefers_earlier_axis() {
        assert_eq!(axis_class(Vec3::new(0.0, 1.0, 1.0)), AxisClass::Y);
        assert_eq!(axis_class(Vec3::new(1.0, 0.0, -1.0)), AxisClass::X);
    }

    #[test]
    fn extents() {
        assert_eq!(global_extent(&[disk(0.0, 0.0, 1.0)]).unwrap(), Vec3::new(2.0, 2.0, 0.0));
        assert_eq!(
            global_extent(&[disk(0.0, 0.0, 1.0), disk(1.0, 0.0, 0.0)]).unwrap(),
            Vec3::new(2.0, 2.0, 2.0)
        );
        assert!(global_extent(&[]).is_err());
    }

    #[test]
    fn axis_names_parse() {
        assert_eq!("Z".parse::<AxisClass>().unwrap(), AxisClass::Z);
        assert!("w".parse::<AxisClass>().is_err());
    }
}
