//! Keypoint time series: per-frame named 3D landmark positions with an
//! explicit validity mask. Missing samples are represented as `None`,
//! never as silent zeros.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::math::Vec3;
use crate::skeleton::Side;

/// One frame of landmark positions. `None` marks a missing sample.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSample {
    positions: Vec<Option<Vec3>>,
}

impl FrameSample {
    pub fn new(positions: Vec<Option<Vec3>>) -> FrameSample {
        FrameSample { positions }
    }

    pub fn get(&self, landmark: usize) -> Option<Vec3> {
        self.positions.get(landmark).copied().flatten()
    }

    pub fn is_valid(&self, landmark: usize) -> bool {
        self.get(landmark).is_some()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn positions(&self) -> &[Option<Vec3>] {
        &self.positions
    }

    pub(crate) fn positions_mut(&mut self) -> &mut Vec<Option<Vec3>> {
        &mut self.positions
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceError {
    NonPositiveSampleRate(f64),
    /// Frame `frame` carries a different landmark count than the header.
    LandmarkCountMismatch { frame: usize, expected: usize, got: usize },
    NonFinitePosition { frame: usize, landmark: usize },
}

impl fmt::Display for SequenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceError::NonPositiveSampleRate(r) => {
                write!(f, "sample rate must be positive, got {r}")
            }
            SequenceError::LandmarkCountMismatch { frame, expected, got } => write!(
                f,
                "frame {frame} has {got} landmarks, expected {expected}"
            ),
            SequenceError::NonFinitePosition { frame, landmark } => {
                write!(f, "non-finite position at frame {frame}, landmark {landmark}")
            }
        }
    }
}

impl core::error::Error for SequenceError {}

/// An ordered keypoint time series for one trial.
#[derive(Debug, Clone, PartialEq)]
pub struct KeypointSequence {
    landmark_names: Vec<String>,
    frames: Vec<FrameSample>,
    sample_rate_hz: f64,
    pub trial_id: String,
    pub subject_id: String,
    pub limb_side: Side,
}

impl KeypointSequence {
    /// Validates the structural invariants: positive rate, uniform landmark
    /// arity, and finite coordinates on every valid sample.
    pub fn new(
        landmark_names: Vec<String>,
        frames: Vec<FrameSample>,
        sample_rate_hz: f64,
        trial_id: String,
        subject_id: String,
        limb_side: Side,
    ) -> Result<KeypointSequence, SequenceError> {
        if !(sample_rate_hz > 0.0) {
            return Err(SequenceError::NonPositiveSampleRate(sample_rate_hz));
        }
        let expected = landmark_names.len();
        for (i, frame) in frames.iter().enumerate() {
            if frame.len() != expected {
                return Err(SequenceError::LandmarkCountMismatch {
                    frame: i,
                    expected,
                    got: frame.len(),
                });
            }
            for (j, p) in frame.positions().iter().enumerate() {
                if let Some(v) = p {
                    if !v.is_finite() {
                        return Err(SequenceError::NonFinitePosition { frame: i, landmark: j });
                    }
                }
            }
        }
        Ok(KeypointSequence {
            landmark_names,
            frames,
            sample_rate_hz,
            trial_id,
            subject_id,
            limb_side,
        })
    }

    /// Builds a sequence reusing this one's identity and landmark order.
    pub(crate) fn with_frames(&self, frames: Vec<FrameSample>) -> KeypointSequence {
        KeypointSequence {
            landmark_names: self.landmark_names.clone(),
            frames,
            sample_rate_hz: self.sample_rate_hz,
            trial_id: self.trial_id.clone(),
            subject_id: self.subject_id.clone(),
            limb_side: self.limb_side,
        }
    }

    pub(crate) fn set_limb_side(&mut self, side: Side) {
        self.limb_side = side;
    }

    pub fn landmark_names(&self) -> &[String] {
        &self.landmark_names
    }

    pub fn landmark_index(&self, name: &str) -> Option<usize> {
        self.landmark_names.iter().position(|n| n == name)
    }

    pub fn n_landmarks(&self) -> usize {
        self.landmark_names.len()
    }

    pub fn frames(&self) -> &[FrameSample] {
        &self.frames
    }

    pub fn n_frames(&self) -> usize {
        self.frames.len()
    }

    pub fn sample_rate_hz(&self) -> f64 {
        self.sample_rate_hz
    }

    pub fn duration_s(&self) -> f64 {
        self.frames.len() as f64 / self.sample_rate_hz
    }

    pub fn get(&self, frame: usize, landmark: usize) -> Option<Vec3> {
        self.frames.get(frame).and_then(|f| f.get(landmark))
    }

    /// Position of a landmark that is known to be valid; panics otherwise.
    /// Only for use after full-validity has been established.
    pub fn position(&self, frame: usize, landmark: usize) -> Vec3 {
        self.get(frame, landmark)
            .expect("landmark sample must be valid here")
    }

    /// Total number of valid samples across all frames and landmarks.
    pub fn valid_count(&self) -> usize {
        self.frames
            .iter()
            .map(|f| f.positions().iter().filter(|p| p.is_some()).count())
            .sum()
    }

    pub fn fully_valid(&self) -> bool {
        self.frames
            .iter()
            .all(|f| f.positions().iter().all(|p| p.is_some()))
    }

    /// One coordinate series (x=0, y=1, z=2) for a landmark; `None` entries
    /// where the sample is missing.
    pub fn coordinate_series(&self, landmark: usize, axis: usize) -> Vec<Option<f64>> {
        self.frames
            .iter()
            .map(|f| {
                f.get(landmark).map(|v| match axis {
                    0 => v.x,
                    1 => v.y,
                    _ => v.z,
                })
            })
            .collect()
    }
}
