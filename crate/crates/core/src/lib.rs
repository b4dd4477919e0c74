//! Desk-scale radiology triage toolkit: noise-corrected linear
//! classification, ROC/AUC statistics with DeLong's test, and a
//! retrospective reporting-queue simulation with permutation-based
//! significance testing.
//!
//! The numeric modules are generic over [`scalar::Real`] (`f32` or `f64`);
//! the aliases below pin the default `f64` instantiations.

pub mod cohort_gen;
pub mod error;
pub mod io;
pub mod noise_correction;
pub mod roc_stats;
pub mod scalar;
pub mod seed;
pub mod triage_sim;

pub use error::{Error, Result};
pub use scalar::Real;

/// Default `f64` instantiations of the generic types.
pub type TransitionMatrix = noise_correction::TransitionMatrix<f64>;
pub type LabeledFeatureSet = noise_correction::LabeledFeatureSet<f64>;
pub type LinearClassifier = noise_correction::LinearClassifier<f64>;
pub type ScoredSample = roc_stats::ScoredSample<f64>;
pub type RocCurve = roc_stats::RocCurve<f64>;
pub type OperatingPoint = roc_stats::OperatingPoint<f64>;

/// `f32` instantiations, for callers trading precision for footprint.
pub type TransitionMatrix32 = noise_correction::TransitionMatrix<f32>;
pub type LabeledFeatureSet32 = noise_correction::LabeledFeatureSet<f32>;
pub type LinearClassifier32 = noise_correction::LinearClassifier<f32>;
pub type ScoredSample32 = roc_stats::ScoredSample<f32>;
