//! Seeded synthetic cohorts and feature sets.
//!
//! Cohorts are calibrated to published dataset statistics (exam counts,
//! abnormal fractions, per-class historical delay moments) so the simulator
//! and classifier can be exercised at desk scale with known ground truth.
//! Features come from class-conditional Gaussians, whose Bayes posterior is
//! available in closed form for calibration checks.

use crate::error::{Error, Result};
use crate::noise_correction::{LabeledFeatureSet, TransitionMatrix};
use crate::seed::sub_rng;
use crate::triage_sim::Exam;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Cohort generation parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CohortParams {
    pub n_exams: usize,
    pub abnormal_fraction: f64,
    /// Horizon in days; acquisition days fall in `0..days`.
    pub days: u32,
    /// Relative arrival weight per weekday, Monday-first. Day index `d`
    /// maps to weekday `d % 7`.
    pub arrival_weights: [f64; 7],
    /// Per-class `(mean, sd)` of the historical report delay in days;
    /// `[normal, abnormal]`. Sampled as a normal truncated at 0 and rounded.
    pub delay_model: [(f64, f64); 2],
    pub classifier_sensitivity: f64,
    pub classifier_specificity: f64,
    pub label_noise_t: TransitionMatrix<f64>,
    pub age_mean: f64,
    pub age_sd: f64,
    pub site: String,
    pub seed: u64,
}

/// Weekday-only arrivals, uniform Monday through Friday.
pub const WEEKDAY_WEIGHTS: [f64; 7] = [1.0, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0];

impl CohortParams {
    /// Simulation-cohort preset for the larger site: 2986 exams, 67.1%
    /// abnormal, historical delays 10+-8 (normal) and 9+-7 (abnormal) days.
    pub fn kch2018(seed: u64) -> Self {
        Self {
            n_exams: 2986,
            abnormal_fraction: 0.671,
            days: 365,
            arrival_weights: WEEKDAY_WEIGHTS,
            delay_model: [(10.0, 8.0), (9.0, 7.0)],
            classifier_sensitivity: 0.90,
            classifier_specificity: 0.85,
            label_noise_t: default_noise_t(),
            age_mean: 51.6,
            age_sd: 14.3,
            site: "kch".into(),
            seed,
        }
    }

    /// Simulation-cohort preset for the smaller site: 1875 exams, 50.1%
    /// abnormal, historical delays 31+-21 (normal) and 28+-22 (abnormal).
    pub fn gstt2018(seed: u64) -> Self {
        Self {
            n_exams: 1875,
            abnormal_fraction: 0.501,
            days: 365,
            arrival_weights: WEEKDAY_WEIGHTS,
            delay_model: [(31.0, 21.0), (28.0, 22.0)],
            classifier_sensitivity: 0.90,
            classifier_specificity: 0.85,
            label_noise_t: default_noise_t(),
            age_mean: 50.2,
            age_sd: 14.8,
            site: "gstt".into(),
            seed,
        }
    }

    pub fn preset(name: &str, seed: u64) -> Option<Self> {
        match name {
            "kch2018" => Some(Self::kch2018(seed)),
            "gstt2018" => Some(Self::gstt2018(seed)),
            _ => None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_exams == 0 {
            return Err(Error::InvalidCohortParams("n_exams must be >= 1".into()));
        }
        if !(self.abnormal_fraction > 0.0 && self.abnormal_fraction < 1.0) {
            return Err(Error::InvalidCohortParams(format!(
                "abnormal_fraction {} outside (0, 1)",
                self.abnormal_fraction
            )));
        }
        if self.days == 0 {
            return Err(Error::InvalidCohortParams("days must be >= 1".into()));
        }
        if self.arrival_weights.iter().any(|&w| w < 0.0)
            || self.arrival_weights.iter().sum::<f64>() <= 0.0
        {
            return Err(Error::InvalidCohortParams(
                "arrival weights must be nonnegative with positive sum".into(),
            ));
        }
        for &(mean, sd) in &self.delay_model {
            if mean < 0.0 || sd < 0.0 {
                return Err(Error::InvalidCohortParams(
                    "delay model moments must be nonnegative".into(),
                ));
            }
        }
        for (name, v) in [
            ("sensitivity", self.classifier_sensitivity),
            ("specificity", self.classifier_specificity),
        ] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::InvalidCohortParams(format!(
                    "classifier {name} {v} outside (0, 1]"
                )));
            }
        }
        Ok(())
    }
}

/// Transition matrix estimated from the pooled report-classifier confusion
/// counts; the default flip model for synthetic noisy labels.
pub fn default_noise_t() -> TransitionMatrix<f64> {
    crate::noise_correction::estimate_transition(crate::noise_correction::POOLED_REPORT_CONFUSION)
        .expect("pooled confusion counts are valid")
}

fn sample_standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; two uniforms per draw keeps the stream layout obvious.
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn sample_day(rng: &mut ChaCha8Rng, days: u32, weights: &[f64; 7]) -> u32 {
    // cumulative weights over the whole horizon
    let total: f64 = (0..days).map(|d| weights[(d % 7) as usize]).sum();
    let mut target = rng.gen_range(0.0..total);
    for d in 0..days {
        let w = weights[(d % 7) as usize];
        if target < w {
            return d;
        }
        target -= w;
    }
    days - 1
}

/// Generate a synthetic cohort. Deterministic per seed.
pub fn generate_cohort(params: &CohortParams) -> Result<Vec<Exam>> {
    params.validate()?;
    let mut rng = sub_rng(params.seed, "cohort", 0);
    let t = &params.label_noise_t;
    let mut exams = Vec::with_capacity(params.n_exams);
    for i in 0..params.n_exams {
        let true_label = u8::from(rng.gen::<f64>() < params.abnormal_fraction);
        let acquisition_day = sample_day(&mut rng, params.days, &params.arrival_weights);
        let (mean, sd) = params.delay_model[true_label as usize];
        let delay = (mean + sd * sample_standard_normal(&mut rng)).round().max(0.0) as u32;
        let noisy_label = flip_label(true_label, t, &mut rng);
        let predicted_class = if true_label == 1 {
            u8::from(rng.gen::<f64>() < params.classifier_sensitivity)
        } else {
            u8::from(rng.gen::<f64>() >= params.classifier_specificity)
        };
        let age = (params.age_mean + params.age_sd * sample_standard_normal(&mut rng)).max(18.0);
        exams.push(Exam {
            id: format!("exam-{i:06}"),
            site: params.site.clone(),
            acquisition_day,
            historical_report_day: acquisition_day + delay,
            true_label: Some(true_label),
            noisy_label,
            predicted_class,
            age_years: Some(age),
        });
    }
    Ok(exams)
}

fn flip_label(true_label: u8, t: &TransitionMatrix<f64>, rng: &mut ChaCha8Rng) -> u8 {
    // column of the true class gives p(noisy = j | true)
    let p_noisy_1 = t.entry(1, true_label as usize);
    u8::from(rng.gen::<f64>() < p_noisy_1)
}

/// Flip each label independently per the corresponding column of `T`.
pub fn inject_label_noise(true_labels: &[u8], t: &TransitionMatrix<f64>, seed: u64) -> Vec<u8> {
    let mut rng = sub_rng(seed, "label-noise", 0);
    true_labels
        .iter()
        .map(|&l| flip_label(l, t, &mut rng))
        .collect()
}

/// Feature generation parameters: class-conditional isotropic Gaussians.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureParams {
    pub d: usize,
    /// Per-class mean vectors, `[normal, abnormal]`, each of length `d`.
    pub class_means: [Vec<f64>; 2],
    /// Shared isotropic variance.
    pub class_cov_scale: f64,
    pub seed: u64,
}

impl FeatureParams {
    /// Default feature geometry: two informative dimensions separated by
    /// `separation`, plus one age-analog dimension shared by both classes.
    pub fn standard(separation: f64, seed: u64) -> Self {
        Self {
            d: 3,
            class_means: [vec![0.0, 0.0, 0.0], vec![separation, separation, 0.0]],
            class_cov_scale: 1.0,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d == 0 {
            return Err(Error::InvalidCohortParams("feature d must be >= 1".into()));
        }
        if self.class_means[0].len() != self.d || self.class_means[1].len() != self.d {
            return Err(Error::InvalidCohortParams(
                "class mean length must equal d".into(),
            ));
        }
        if !(self.class_cov_scale > 0.0) {
            return Err(Error::InvalidCohortParams(
                "class_cov_scale must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Analytic Bayes posterior `p(abnormal | x)` for the generated model
    /// with abnormal prior `prior_abnormal`.
    pub fn bayes_posterior(&self, prior_abnormal: f64, x: &[f64]) -> f64 {
        let var = self.class_cov_scale;
        let mut logit = (prior_abnormal / (1.0 - prior_abnormal)).ln();
        for k in 0..self.d {
            let m0 = self.class_means[0][k];
            let m1 = self.class_means[1][k];
            logit += ((m1 - m0) * x[k] + (m0 * m0 - m1 * m1) / 2.0) / var;
        }
        1.0 / (1.0 + (-logit).exp())
    }
}

/// Draw class-conditional Gaussian features for the given labels. The
/// returned set carries the labels as both true and noisy; callers inject
/// flips via [`inject_label_noise`] and `set_noisy_labels`.
pub fn generate_features(params: &FeatureParams, labels: &[u8]) -> Result<LabeledFeatureSet<f64>> {
    params.validate()?;
    if labels.is_empty() {
        return Err(Error::LabelCountMismatch { labels: 0, n: 0 });
    }
    let mut rng = sub_rng(params.seed, "features", 0);
    let sd = params.class_cov_scale.sqrt();
    let mut features = Vec::with_capacity(labels.len() * params.d);
    for &label in labels {
        let means = &params.class_means[label as usize];
        for k in 0..params.d {
            features.push(means[k] + sd * sample_standard_normal(&mut rng));
        }
    }
    LabeledFeatureSet::new(features, params.d, Some(labels.to_vec()), labels.to_vec())
}
