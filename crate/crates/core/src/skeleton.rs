//! The 17 anatomical landmark roles and the map from roles to input landmark names.
//!
//! Ingested keypoint sets may carry any superset of landmarks (e.g. a full
//! 87-point estimator output); the skeleton map selects the 17 roles the
//! pipeline actually uses.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::sequence::KeypointSequence;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Which limb a trial, cycle, or z-score refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    pub fn from_key(s: &str) -> Option<Side> {
        match s {
            "left" | "l" | "L" => Some(Side::Left),
            "right" | "r" | "R" => Some(Side::Right),
            _ => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

/// The 17 anatomical roles required by the angle pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum LandmarkRole {
    LHip,
    RHip,
    LKneeLat,
    LKneeMed,
    RKneeLat,
    RKneeMed,
    LAnkleLat,
    LAnkleMed,
    RAnkleLat,
    RAnkleMed,
    LHeel,
    RHeel,
    LToe,
    RToe,
    MidHip,
    Backneck,
    Sternum,
}

pub const ROLE_COUNT: usize = 17;

impl LandmarkRole {
    pub const ALL: [LandmarkRole; ROLE_COUNT] = [
        LandmarkRole::LHip,
        LandmarkRole::RHip,
        LandmarkRole::LKneeLat,
        LandmarkRole::LKneeMed,
        LandmarkRole::RKneeLat,
        LandmarkRole::RKneeMed,
        LandmarkRole::LAnkleLat,
        LandmarkRole::LAnkleMed,
        LandmarkRole::RAnkleLat,
        LandmarkRole::RAnkleMed,
        LandmarkRole::LHeel,
        LandmarkRole::RHeel,
        LandmarkRole::LToe,
        LandmarkRole::RToe,
        LandmarkRole::MidHip,
        LandmarkRole::Backneck,
        LandmarkRole::Sternum,
    ];

    /// Stable text key used in skeleton-map files.
    pub fn key(self) -> &'static str {
        match self {
            LandmarkRole::LHip => "l_hip",
            LandmarkRole::RHip => "r_hip",
            LandmarkRole::LKneeLat => "l_knee_lat",
            LandmarkRole::LKneeMed => "l_knee_med",
            LandmarkRole::RKneeLat => "r_knee_lat",
            LandmarkRole::RKneeMed => "r_knee_med",
            LandmarkRole::LAnkleLat => "l_ankle_lat",
            LandmarkRole::LAnkleMed => "l_ankle_med",
            LandmarkRole::RAnkleLat => "r_ankle_lat",
            LandmarkRole::RAnkleMed => "r_ankle_med",
            LandmarkRole::LHeel => "l_heel",
            LandmarkRole::RHeel => "r_heel",
            LandmarkRole::LToe => "l_toe",
            LandmarkRole::RToe => "r_toe",
            LandmarkRole::MidHip => "mid_hip",
            LandmarkRole::Backneck => "backneck",
            LandmarkRole::Sternum => "sternum",
        }
    }

    pub fn from_key(s: &str) -> Option<LandmarkRole> {
        LandmarkRole::ALL.iter().copied().find(|r| r.key() == s)
    }

    fn ordinal(self) -> usize {
        LandmarkRole::ALL.iter().position(|r| *r == self).unwrap()
    }

    /// The matching role on the other limb, `None` for midline roles.
    pub fn mirrored(self) -> Option<LandmarkRole> {
        use LandmarkRole::*;
        match self {
            LHip => Some(RHip),
            RHip => Some(LHip),
            LKneeLat => Some(RKneeLat),
            RKneeLat => Some(LKneeLat),
            LKneeMed => Some(RKneeMed),
            RKneeMed => Some(LKneeMed),
            LAnkleLat => Some(RAnkleLat),
            RAnkleLat => Some(LAnkleLat),
            LAnkleMed => Some(RAnkleMed),
            RAnkleMed => Some(LAnkleMed),
            LHeel => Some(RHeel),
            RHeel => Some(LHeel),
            LToe => Some(RToe),
            RToe => Some(LToe),
            MidHip | Backneck | Sternum => None,
        }
    }

    pub fn hip(side: Side) -> LandmarkRole {
        match side {
            Side::Left => LandmarkRole::LHip,
            Side::Right => LandmarkRole::RHip,
        }
    }

    pub fn knee_lat(side: Side) -> LandmarkRole {
        match side {
            Side::Left => LandmarkRole::LKneeLat,
            Side::Right => LandmarkRole::RKneeLat,
        }
    }

    pub fn knee_med(side: Side) -> LandmarkRole {
        match side {
            Side::Left => LandmarkRole::LKneeMed,
            Side::Right => LandmarkRole::RKneeMed,
        }
    }

    pub fn ankle_lat(side: Side) -> LandmarkRole {
        match side {
            Side::Left => LandmarkRole::LAnkleLat,
            Side::Right => LandmarkRole::RAnkleLat,
        }
    }

    pub fn ankle_med(side: Side) -> LandmarkRole {
        match side {
            Side::Left => LandmarkRole::LAnkleMed,
            Side::Right => LandmarkRole::RAnkleMed,
        }
    }

    pub fn heel(side: Side) -> LandmarkRole {
        match side {
            Side::Left => LandmarkRole::LHeel,
            Side::Right => LandmarkRole::RHeel,
        }
    }

    pub fn toe(side: Side) -> LandmarkRole {
        match side {
            Side::Left => LandmarkRole::LToe,
            Side::Right => LandmarkRole::RToe,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkeletonError {
    /// A role is missing from the map.
    MissingRole(&'static str),
    /// A left/right role pair maps to the same landmark name.
    DuplicateBilateral(&'static str, &'static str),
    /// A mapped landmark name does not exist in the sequence.
    UnknownLandmark(String),
}

impl fmt::Display for SkeletonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SkeletonError::MissingRole(r) => write!(f, "skeleton map is missing role `{r}`"),
            SkeletonError::DuplicateBilateral(a, b) => {
                write!(f, "roles `{a}` and `{b}` map to the same landmark")
            }
            SkeletonError::UnknownLandmark(n) => {
                write!(f, "mapped landmark `{n}` not present in sequence")
            }
        }
    }
}

impl core::error::Error for SkeletonError {}

/// Maps each of the 17 roles to a landmark name in the input set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonMap {
    names: [String; ROLE_COUNT],
}

impl SkeletonMap {
    /// Builds a map from `(role, landmark name)` entries. All 17 roles must be
    /// present and bilateral role pairs must map to distinct names.
    pub fn new(entries: &[(LandmarkRole, String)]) -> Result<SkeletonMap, SkeletonError> {
        let mut names: [Option<String>; ROLE_COUNT] = Default::default();
        for (role, name) in entries {
            names[role.ordinal()] = Some(name.clone());
        }
        let mut out: Vec<String> = Vec::with_capacity(ROLE_COUNT);
        for role in LandmarkRole::ALL {
            match &names[role.ordinal()] {
                Some(n) => out.push(n.clone()),
                None => return Err(SkeletonError::MissingRole(role.key())),
            }
        }
        let map = SkeletonMap {
            names: out.try_into().expect("length checked"),
        };
        for role in LandmarkRole::ALL {
            if let Some(other) = role.mirrored() {
                if map.name(role) == map.name(other) {
                    return Err(SkeletonError::DuplicateBilateral(role.key(), other.key()));
                }
            }
        }
        Ok(map)
    }

    /// The identity map: every role maps to its own key. This is the naming
    /// the synthetic generator writes.
    pub fn identity() -> SkeletonMap {
        let entries: Vec<(LandmarkRole, String)> = LandmarkRole::ALL
            .iter()
            .map(|r| (*r, r.key().to_string()))
            .collect();
        SkeletonMap::new(&entries).expect("identity map is complete")
    }

    pub fn name(&self, role: LandmarkRole) -> &str {
        &self.names[role.ordinal()]
    }

    pub fn entries(&self) -> impl Iterator<Item = (LandmarkRole, &str)> {
        LandmarkRole::ALL
            .iter()
            .map(move |r| (*r, self.name(*r)))
    }

    /// Resolves role names to landmark indices of a concrete sequence.
    ///
    /// Once this succeeds, downstream role lookups cannot miss.
    pub fn resolve(&self, seq: &KeypointSequence) -> Result<ResolvedSkeleton, SkeletonError> {
        let mut idx = [0usize; ROLE_COUNT];
        for role in LandmarkRole::ALL {
            let name = self.name(role);
            match seq.landmark_index(name) {
                Some(i) => idx[role.ordinal()] = i,
                None => return Err(SkeletonError::UnknownLandmark(name.to_string())),
            }
        }
        Ok(ResolvedSkeleton { idx })
    }
}

/// Role-to-column indices resolved against one sequence's landmark order.
#[derive(Debug, Clone, Copy)]
pub struct ResolvedSkeleton {
    idx: [usize; ROLE_COUNT],
}

impl ResolvedSkeleton {
    pub fn index(&self, role: LandmarkRole) -> usize {
        self.idx[role.ordinal()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::Vec3;
    use crate::sequence::{FrameSample, KeypointSequence};

    fn tiny_sequence(names: &[&str]) -> KeypointSequence {
        let frame = FrameSample::new(names.iter().map(|_| Some(Vec3::ZERO)).collect());
        KeypointSequence::new(
            names.iter().map(|s| s.to_string()).collect(),
            alloc::vec![frame],
            60.0,
            "t0".into(),
            "s0".into(),
            Side::Left,
        )
        .unwrap()
    }

    #[test]
    fn identity_map_resolves_against_identity_names() {
        let names: Vec<&str> = LandmarkRole::ALL.iter().map(|r| r.key()).collect();
        let seq = tiny_sequence(&names);
        let map = SkeletonMap::identity();
        let resolved = map.resolve(&seq).unwrap();
        for (i, role) in LandmarkRole::ALL.iter().enumerate() {
            assert_eq!(resolved.index(*role), i);
        }
    }

    #[test]
    fn missing_role_rejected() {
        let mut entries: Vec<(LandmarkRole, String)> = LandmarkRole::ALL
            .iter()
            .map(|r| (*r, r.key().to_string()))
            .collect();
        entries.pop();
        assert!(matches!(
            SkeletonMap::new(&entries),
            Err(SkeletonError::MissingRole(_))
        ));
    }

    #[test]
    fn bilateral_duplicate_rejected() {
        let mut entries: Vec<(LandmarkRole, String)> = LandmarkRole::ALL
            .iter()
            .map(|r| (*r, r.key().to_string()))
            .collect();
        for e in entries.iter_mut() {
            if e.0 == LandmarkRole::RHeel {
                e.1 = "l_heel".to_string();
            }
        }
        assert!(matches!(
            SkeletonMap::new(&entries),
            Err(SkeletonError::DuplicateBilateral(_, _))
        ));
    }

    #[test]
    fn unknown_landmark_detected_at_resolve() {
        let seq = tiny_sequence(&["a", "b"]);
        let map = SkeletonMap::identity();
        assert!(matches!(
            map.resolve(&seq),
            Err(SkeletonError::UnknownLandmark(_))
        ));
    }
}
