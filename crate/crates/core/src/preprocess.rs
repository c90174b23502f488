//! Keypoint cleaning chain: empty-frame removal, gap interpolation,
//! zero-phase Butterworth low-pass filtering, hip-centering, and stature
//! rescaling.
//!
//! The pipeline order is fixed: drop -> interpolate -> lowpass ->
//! hip_center -> stature_rescale. Every step is a pure function from one
//! sequence to a new one, so the composed pipeline is deterministic.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

use crate::math::Vec3;
use crate::sequence::{FrameSample, KeypointSequence};
use crate::skeleton::{LandmarkRole, SkeletonMap};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Default moving-average window (frames) for the stature reference segment.
pub const DEFAULT_MA_WINDOW: usize = 30;

/// Default backneck-to-sternum reference length in meters. A placeholder
/// constant for normalization, not an anthropometric claim.
pub const DEFAULT_REFERENCE_LEN_M: f64 = 0.18;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FilterMode {
    /// Forward-backward application; the effective magnitude response is
    /// the squared single-pass response and the phase is zero.
    ZeroPhase,
}

/// Low-pass filter configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct FilterSpec {
    pub order: usize,
    pub cutoff_hz: f64,
    pub mode: FilterMode,
}

impl Default for FilterSpec {
    fn default() -> Self {
        FilterSpec { order: 4, cutoff_hz: 6.0, mode: FilterMode::ZeroPhase }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum PreprocessError {
    /// Nothing left after removing empty frames.
    AllFramesEmpty,
    /// A landmark has no valid sample anywhere in the trial.
    LandmarkNeverObserved { landmark: usize },
    /// Too few frames for the requested filter order.
    SequenceTooShort { len: usize, min: usize },
    CutoffAboveNyquist { cutoff_hz: f64, nyquist_hz: f64 },
    /// The filter requires a fully valid sequence (run interpolation first).
    MissingSamples { frame: usize, landmark: usize },
    InvalidFilterOrder,
    /// Hip landmarks missing at a frame, mid-hip underivable.
    MissingHipLandmarks { frame: usize },
    /// Smoothed reference segment collapsed below epsilon.
    DegenerateSegment { frame: usize },
}

impl fmt::Display for PreprocessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PreprocessError::AllFramesEmpty => write!(f, "every frame is empty"),
            PreprocessError::LandmarkNeverObserved { landmark } => {
                write!(f, "landmark {landmark} has no valid sample to interpolate from")
            }
            PreprocessError::SequenceTooShort { len, min } => {
                write!(f, "sequence of {len} frames is too short to filter (need > {min})")
            }
            PreprocessError::CutoffAboveNyquist { cutoff_hz, nyquist_hz } => {
                write!(f, "cutoff {cutoff_hz} Hz not below Nyquist {nyquist_hz} Hz")
            }
            PreprocessError::MissingSamples { frame, landmark } => {
                write!(f, "missing sample at frame {frame}, landmark {landmark}")
            }
            PreprocessError::InvalidFilterOrder => write!(f, "filter order must be >= 1"),
            PreprocessError::MissingHipLandmarks { frame } => {
                write!(f, "hip landmarks missing at frame {frame}")
            }
            PreprocessError::DegenerateSegment { frame } => {
                write!(f, "smoothed reference segment degenerate at frame {frame}")
            }
        }
    }
}

impl core::error::Error for PreprocessError {}

/// True when the sample is missing or exactly (0,0,0).
///
/// Failed detections arrive as either, so both count as emptiness at this
/// ingestion boundary. Past this step, zeros are legal coordinates.
fn sample_is_empty(p: Option<Vec3>) -> bool {
    match p {
        None => true,
        Some(v) => v.x == 0.0 && v.y == 0.0 && v.z == 0.0,
    }
}

/// Removes frames on which every landmark is missing or all-zero.
pub fn drop_empty_frames(seq: &KeypointSequence) -> Result<KeypointSequence, PreprocessError> {
    let kept: Vec<FrameSample> = seq
        .frames()
        .iter()
        .filter(|f| !f.positions().iter().all(|p| sample_is_empty(*p)))
        .cloned()
        .collect();
    if kept.is_empty() {
        return Err(PreprocessError::AllFramesEmpty);
    }
    Ok(seq.with_frames(kept))
}

/// Fills missing samples per landmark and coordinate: interior gaps by
/// linear interpolation between the nearest valid neighbors, leading and
/// trailing gaps by holding the nearest valid value.
pub fn interpolate_gaps(seq: &KeypointSequence) -> Result<KeypointSequence, PreprocessError> {
    let n = seq.n_frames();
    let mut frames = seq.frames().to_vec();
    for lm in 0..seq.n_landmarks() {
        let valid_idx: Vec<usize> = (0..n).filter(|&i| frames[i].is_valid(lm)).collect();
        if valid_idx.is_empty() {
            return Err(PreprocessError::LandmarkNeverObserved { landmark: lm });
        }
        if valid_idx.len() == n {
            continue;
        }
        let mut filled: Vec<Vec3> = Vec::with_capacity(n);
        let mut next_valid = 0usize; // index into valid_idx of the first valid frame >= i
        for i in 0..n {
            while next_valid < valid_idx.len() && valid_idx[next_valid] < i {
                next_valid += 1;
            }
            let v = if next_valid < valid_idx.len() && valid_idx[next_valid] == i {
                frames[i].get(lm).unwrap()
            } else if next_valid == 0 {
                // leading gap: hold first valid value
                frames[valid_idx[0]].get(lm).unwrap()
            } else if next_valid == valid_idx.len() {
                // trailing gap: hold last valid value
                frames[*valid_idx.last().unwrap()].get(lm).unwrap()
            } else {
                let i0 = valid_idx[next_valid - 1];
                let i1 = valid_idx[next_valid];
                let p0 = frames[i0].get(lm).unwrap();
                let p1 = frames[i1].get(lm).unwrap();
                let t = (i - i0) as f64 / (i1 - i0) as f64;
                p0.add(p1.sub(p0).scale(t))
            };
            filled.push(v);
        }
        for (i, v) in filled.into_iter().enumerate() {
            frames[i].positions_mut()[lm] = Some(v);
        }
    }
    Ok(seq.with_frames(frames))
}

/// One second-order section in direct form II transposed; `a0` normalized
/// to 1, so `a = [a1, a2]`. First-order sections set `b2 = a2 = 0`.
#[derive(Debug, Clone, Copy)]
struct Biquad {
    b: [f64; 3],
    a: [f64; 2],
}

impl Biquad {
    fn dc_gain(&self) -> f64 {
        (self.b[0] + self.b[1] + self.b[2]) / (1.0 + self.a[0] + self.a[1])
    }

    /// Steady-state filter state for a constant input `x0`, so a constant
    /// signal passes without transient.
    fn steady_state(&self, x0: f64) -> (f64, f64) {
        let g = self.dc_gain();
        let s1 = (g - self.b[0]) * x0;
        let s2 = (self.b[2] - self.a[1] * g) * x0;
        (s1, s2)
    }

    fn run(&self, data: &mut [f64]) {
        if data.is_empty() {
            return;
        }
        let (mut s1, mut s2) = self.steady_state(data[0]);
        for v in data.iter_mut() {
            let x = *v;
            let y = self.b[0] * x + s1;
            s1 = self.b[1] * x - self.a[0] * y + s2;
            s2 = self.b[2] * x - self.a[1] * y;
            *v = y;
        }
    }
}

/// Designs a digital Butterworth low-pass as cascaded second-order sections
/// via the bilinear transform with cutoff prewarping.
fn butterworth_sections(order: usize, cutoff_hz: f64, fs: f64) -> Vec<Biquad> {
    // Prewarped analog cutoff, rad/s.
    let wc = 2.0 * fs * (core::f64::consts::PI * cutoff_hz / fs).tan();
    let k = 2.0 * fs;
    let mut sections = Vec::new();
    let n_pairs = order / 2;
    for i in 0..n_pairs {
        // Analog section: wc^2 / (s^2 + 2 sin(phi) wc s + wc^2).
        let phi = core::f64::consts::PI * (2 * i + 1) as f64 / (2 * order) as f64;
        let q = 2.0 * phi.sin() * wc;
        let k2 = k * k;
        let w2 = wc * wc;
        let a0 = k2 + q * k + w2;
        sections.push(Biquad {
            b: [w2 / a0, 2.0 * w2 / a0, w2 / a0],
            a: [(2.0 * w2 - 2.0 * k2) / a0, (k2 - q * k + w2) / a0],
        });
    }
    if order % 2 == 1 {
        // Analog section: wc / (s + wc).
        let a0 = k + wc;
        sections.push(Biquad {
            b: [wc / a0, wc / a0, 0.0],
            a: [(wc - k) / a0, 0.0],
        });
    }
    sections
}

/// Zero-phase (forward-backward) filtering with odd-reflection padding and
/// steady-state initial conditions on each pass.
fn filtfilt(sections: &[Biquad], x: &[f64], padlen: usize) -> Vec<f64> {
    let n = x.len();
    let padlen = padlen.min(n.saturating_sub(1));
    let mut ext: Vec<f64> = Vec::with_capacity(n + 2 * padlen);
    for i in (1..=padlen).rev() {
        ext.push(2.0 * x[0] - x[i]);
    }
    ext.extend_from_slice(x);
    for i in (1..=padlen).rev() {
        ext.push(2.0 * x[n - 1] - x[n - 1 - i]);
    }
    for sec in sections {
        sec.run(&mut ext);
    }
    ext.reverse();
    for sec in sections {
        sec.run(&mut ext);
    }
    ext.reverse();
    ext[padlen..padlen + n].to_vec()
}

/// Filters each landmark coordinate series independently. The sequence must
/// be fully valid (run `interpolate_gaps` first) and longer than `3 * order`
/// frames.
pub fn lowpass(
    seq: &KeypointSequence,
    spec: &FilterSpec,
) -> Result<KeypointSequence, PreprocessError> {
    if spec.order < 1 {
        return Err(PreprocessError::InvalidFilterOrder);
    }
    let fs = seq.sample_rate_hz();
    let nyquist = fs / 2.0;
    if !(spec.cutoff_hz > 0.0) || spec.cutoff_hz >= nyquist {
        return Err(PreprocessError::CutoffAboveNyquist {
            cutoff_hz: spec.cutoff_hz,
            nyquist_hz: nyquist,
        });
    }
    let n = seq.n_frames();
    if n <= 3 * spec.order {
        return Err(PreprocessError::SequenceTooShort { len: n, min: 3 * spec.order });
    }
    for (i, frame) in seq.frames().iter().enumerate() {
        if let Some(lm) = frame.positions().iter().position(|p| p.is_none()) {
            return Err(PreprocessError::MissingSamples { frame: i, landmark: lm });
        }
    }

    let sections = butterworth_sections(spec.order, spec.cutoff_hz, fs);
    let padlen = 3 * (2 * spec.order + 1);
    let mut frames = seq.frames().to_vec();
    let mut series = vec![0.0f64; n];
    for lm in 0..seq.n_landmarks() {
        for axis in 0..3 {
            for (i, frame) in seq.frames().iter().enumerate() {
                let v = frame.get(lm).unwrap();
                series[i] = match axis {
                    0 => v.x,
                    1 => v.y,
                    _ => v.z,
                };
            }
            let filtered = match spec.mode {
                FilterMode::ZeroPhase => filtfilt(&sections, &series, padlen),
            };
            for (i, y) in filtered.into_iter().enumerate() {
                let slot = frames[i].positions_mut()[lm].as_mut().unwrap();
                match axis {
                    0 => slot.x = y,
                    1 => slot.y = y,
                    _ => slot.z = y,
                }
            }
        }
    }
    Ok(seq.with_frames(frames))
}

/// Mid-hip position of a frame: always the midpoint of the left and right
/// hip landmarks, ignoring any provided mid-hip landmark.
pub(crate) fn mid_hip_position(
    seq: &KeypointSequence,
    map: &SkeletonMap,
    frame: usize,
) -> Option<Vec3> {
    let l = seq.landmark_index(map.name(LandmarkRole::LHip))?;
    let r = seq.landmark_index(map.name(LandmarkRole::RHip))?;
    let lp = seq.get(frame, l)?;
    let rp = seq.get(frame, r)?;
    Some(lp.midpoint(rp))
}

/// Subtracts the per-frame mid-hip position from every landmark, removing
/// global translation. Inter-landmark geometry is untouched.
pub fn hip_center(
    seq: &KeypointSequence,
    map: &SkeletonMap,
) -> Result<KeypointSequence, PreprocessError> {
    let mut frames = seq.frames().to_vec();
    for (i, frame) in frames.iter_mut().enumerate() {
        let mid = mid_hip_position(seq, map, i)
            .ok_or(PreprocessError::MissingHipLandmarks { frame: i })?;
        for p in frame.positions_mut().iter_mut() {
            if let Some(v) = p {
                *v = v.sub(mid);
            }
        }
    }
    Ok(seq.with_frames(frames))
}

/// Rescales every frame so the smoothed backneck-to-sternum distance matches
/// `reference_len_m`. The smoothing is a centered moving average over
/// `ma_window` frames, truncated at the edges.
pub fn stature_rescale(
    seq: &KeypointSequence,
    map: &SkeletonMap,
    reference_len_m: f64,
    ma_window: usize,
) -> Result<KeypointSequence, PreprocessError> {
    let neck = seq
        .landmark_index(map.name(LandmarkRole::Backneck))
        .ok_or(PreprocessError::MissingSamples { frame: 0, landmark: 0 })?;
    let sternum = seq
        .landmark_index(map.name(LandmarkRole::Sternum))
        .ok_or(PreprocessError::MissingSamples { frame: 0, landmark: 0 })?;
    let n = seq.n_frames();
    let mut dist = Vec::with_capacity(n);
    for i in 0..n {
        let a = seq.get(i, neck).ok_or(PreprocessError::MissingSamples { frame: i, landmark: neck })?;
        let b = seq
            .get(i, sternum)
            .ok_or(PreprocessError::MissingSamples { frame: i, landmark: sternum })?;
        dist.push(a.distance(b));
    }
    let w = ma_window.max(1);
    let half_back = w / 2;
    let half_fwd = (w - 1) - half_back;
    let mut frames = seq.frames().to_vec();
    for i in 0..n {
        let lo = i.saturating_sub(half_back);
        let hi = (i + half_fwd).min(n - 1);
        let ma = dist[lo..=hi].iter().sum::<f64>() / (hi - lo + 1) as f64;
        if ma < 1e-6 {
            return Err(PreprocessError::DegenerateSegment { frame: i });
        }
        let scale = reference_len_m / ma;
        for p in frames[i].positions_mut().iter_mut() {
            if let Some(v) = p {
                *v = v.scale(scale);
            }
        }
    }
    Ok(seq.with_frames(frames))
}
