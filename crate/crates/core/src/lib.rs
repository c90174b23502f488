//! Core algorithms for video-derived gait analysis.
//!
//! This crate turns cleaned 3D keypoint sequences of walking children into
//! biomechanical joint angles, mid-stance knee/ankle z-scores, and
//! Rodda-Graham gait-pattern labels, and evaluates any z-score predictor
//! with a full agreement/calibration battery. Everything here is pure
//! computation over in-memory data; file formats and the CLI live in the
//! companion `gaitkit` crate.
//!
//! The crate is `no_std`-compatible (`alloc` required). Feature flags:
//!
//! - `std` (default): use the standard library float intrinsics.
//! - `serde`: derive `Serialize`/`Deserialize` on the data-carrying types.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classify;
pub mod cycles;
pub mod folds;
pub mod kinematics;
pub mod math;
pub mod metrics;
pub mod preprocess;
pub mod ridge;
pub mod sequence;
pub mod skeleton;
pub mod stats;
pub mod synth;
pub mod windows;

pub use classify::{flexion_screen, rodda_graham, BoundaryMode, Classification, ClassificationPolicy, Fallback, GaitClass};
pub use cycles::{
    biomech_baseline, biomech_baseline_with_policy, detect_gait_cycles, midstance_mean, zscore,
    CycleError, CyclePolicy, GaitCycle, MidstanceStat,
};
pub use folds::{grouped_kfold, Fold, FoldError, FoldPlan};
pub use kinematics::{
    build_segment_frame, compute_angle_channels, euler_to_matrix, euler_xyz, mirror_limb,
    relative_rotation, EulerAngles, JointAngleSeries, KinematicsError, Segment, SegmentFrame,
    CHANNEL_COUNT, CHANNEL_NAMES,
};
pub use math::{Mat3, Vec3};
pub use metrics::{EvaluationConfig, EvaluationReport, MetricsError};
pub use preprocess::{
    drop_empty_frames, hip_center, interpolate_gaps, lowpass, stature_rescale, FilterMode,
    FilterSpec, PreprocessError, DEFAULT_MA_WINDOW, DEFAULT_REFERENCE_LEN_M,
};
pub use ridge::{average_pool, fit_ridge, MlError, PredictionSet, RidgeModel, TrialPrediction, WindowPredictor};
pub use sequence::{FrameSample, KeypointSequence, SequenceError};
pub use skeleton::{LandmarkRole, ResolvedSkeleton, Side, SkeletonError, SkeletonMap, ROLE_COUNT};
pub use stats::{Joint, NormativeStats, StatsError, ZScorePair, ZScoreSource};
pub use synth::{generate_cohort, generate_trial, SynthCohort, SynthSpec, SynthTrial};
pub use windows::{make_windows, window_features, Window, WindowError, WindowSet, FEATURE_COUNT};
