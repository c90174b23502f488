//! Normative cohort statistics and z-score carrier types.
//!
//! Normative means and standard deviations are configuration, never
//! constants: the values depend on the typically developing cohort the
//! deployment compares against.

use core::fmt;

use alloc::string::String;

use crate::skeleton::Side;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Joint {
    Knee,
    Ankle,
}

impl Joint {
    pub fn key(self) -> &'static str {
        match self {
            Joint::Knee => "knee",
            Joint::Ankle => "ankle",
        }
    }
}

impl fmt::Display for Joint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatsError {
    NonPositiveSd { joint: Joint, sd: f64 },
    NonFinite { field: &'static str },
}

impl fmt::Display for StatsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatsError::NonPositiveSd { joint, sd } => {
                write!(f, "{joint} normative sd must be positive, got {sd}")
            }
            StatsError::NonFinite { field } => write!(f, "non-finite value for `{field}`"),
        }
    }
}

impl core::error::Error for StatsError {}

/// Mid-stance sagittal angle mean and sd of a typically developing cohort,
/// in degrees, per joint.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct NormativeStats {
    knee_mean_deg: f64,
    knee_sd_deg: f64,
    ankle_mean_deg: f64,
    ankle_sd_deg: f64,
}

impl NormativeStats {
    pub fn new(
        knee_mean_deg: f64,
        knee_sd_deg: f64,
        ankle_mean_deg: f64,
        ankle_sd_deg: f64,
    ) -> Result<NormativeStats, StatsError> {
        for (field, v) in [
            ("knee.mean", knee_mean_deg),
            ("knee.sd", knee_sd_deg),
            ("ankle.mean", ankle_mean_deg),
            ("ankle.sd", ankle_sd_deg),
        ] {
            if !v.is_finite() {
                return Err(StatsError::NonFinite { field });
            }
        }
        if knee_sd_deg <= 0.0 {
            return Err(StatsError::NonPositiveSd { joint: Joint::Knee, sd: knee_sd_deg });
        }
        if ankle_sd_deg <= 0.0 {
            return Err(StatsError::NonPositiveSd { joint: Joint::Ankle, sd: ankle_sd_deg });
        }
        Ok(NormativeStats { knee_mean_deg, knee_sd_deg, ankle_mean_deg, ankle_sd_deg })
    }

    pub fn mean_deg(&self, joint: Joint) -> f64 {
        match joint {
            Joint::Knee => self.knee_mean_deg,
            Joint::Ankle => self.ankle_mean_deg,
        }
    }

    pub fn sd_deg(&self, joint: Joint) -> f64 {
        match joint {
            Joint::Knee => self.knee_sd_deg,
            Joint::Ankle => self.ankle_sd_deg,
        }
    }
}

/// Where a z-score pair came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ZScoreSource {
    GroundTruth,
    BiomechBaseline,
    Predictor,
}

/// Knee and ankle z-scores for one limb of one trial.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct ZScorePair {
    pub knee_z: f64,
    pub ankle_z: f64,
    pub trial_id: String,
    pub limb_side: Side,
    pub source: ZScoreSource,
}

impl ZScorePair {
    pub fn new(
        knee_z: f64,
        ankle_z: f64,
        trial_id: String,
        limb_side: Side,
        source: ZScoreSource,
    ) -> Result<ZScorePair, StatsError> {
        if !knee_z.is_finite() {
            return Err(StatsError::NonFinite { field: "knee_z" });
        }
        if !ankle_z.is_finite() {
            return Err(StatsError::NonFinite { field: "ankle_z" });
        }
        Ok(ZScorePair { knee_z, ankle_z, trial_id, limb_side, source })
    }

    pub fn z(&self, joint: Joint) -> f64 {
        match joint {
            Joint::Knee => self.knee_z,
            Joint::Ankle => self.ankle_z,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_verbatim() {
        let n = NormativeStats::new(10.0, 5.0, 8.0, 4.0).unwrap();
        assert_eq!(n.mean_deg(Joint::Knee), 10.0);
        assert_eq!(n.sd_deg(Joint::Knee), 5.0);
        assert_eq!(n.mean_deg(Joint::Ankle), 8.0);
        assert_eq!(n.sd_deg(Joint::Ankle), 4.0);
    }

    #[test]
    fn zero_sd_rejected() {
        assert!(matches!(
            NormativeStats::new(10.0, 0.0, 8.0, 4.0),
            Err(StatsError::NonPositiveSd { joint: Joint::Knee, .. })
        ));
        assert!(matches!(
            NormativeStats::new(10.0, 5.0, 8.0, -1.0),
            Err(StatsError::NonPositiveSd { joint: Joint::Ankle, .. })
        ));
    }

    #[test]
    fn zscore_pair_requires_finite() {
        assert!(ZScorePair::new(
            f64::NAN,
            0.0,
            "t".into(),
            Side::Left,
            ZScoreSource::GroundTruth
        )
        .is_err());
    }
}
