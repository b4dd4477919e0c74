//! Forward label-noise correction for a two-class linear classifier.
//!
//! A noisy label is modeled as a flip of the true label governed by a
//! column-stochastic 2x2 transition matrix `T`, with `T[j][i]` the
//! probability that true class `i` is recorded as class `j`. Multiplying the
//! softmax output by `T` during training makes the cross entropy against
//! noisy labels a consistent objective for the clean posterior; at test time
//! the multiplication is dropped (equivalently, `T` is the identity).
//!
//! Class indexing is fixed throughout the crate: 0 = normal, 1 = abnormal.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::seed::sub_rng;
use rand::Rng;
use serde::{Deserialize, Serialize};

/// Column-stochastic 2x2 label-flip matrix.
///
/// Serialized as a row-major 2x2 JSON array; `t[j][i] = p(noisy = j | true = i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TransitionMatrix<S: Real> {
    t: [[S; 2]; 2],
}

impl<S: Real> TransitionMatrix<S> {
    /// Build from row-major entries, validating column stochasticity.
    pub fn new(t: [[S; 2]; 2]) -> Result<Self> {
        let one = S::one();
        let zero = S::zero();
        for row in &t {
            for &v in row {
                if !(v >= zero && v <= one) {
                    return Err(Error::InvalidTransition(format!(
                        "entry {v} outside [0, 1]"
                    )));
                }
            }
        }
        // 1e-12 is the contract tolerance for f64; widen only as far as the
        // scalar's own epsilon requires (f32 cannot represent 1e-12 sums).
        let tol = S::from_f64_lossy(1e-12).max(S::epsilon() * S::from_f64_lossy(8.0));
        for i in 0..2 {
            let sum = t[0][i] + t[1][i];
            if (sum - one).abs() > tol {
                return Err(Error::InvalidTransition(format!(
                    "column {i} sums to {sum}, expected 1"
                )));
            }
        }
        Ok(Self { t })
    }

    pub fn identity() -> Self {
        Self {
            t: [[S::one(), S::zero()], [S::zero(), S::one()]],
        }
    }

    /// `p(noisy = j | true = i)`.
    pub fn entry(&self, j: usize, i: usize) -> S {
        self.t[j][i]
    }

    pub fn rows(&self) -> [[S; 2]; 2] {
        self.t
    }

    pub fn is_identity(&self) -> bool {
        self.t == Self::identity().t
    }

    /// Apply the flip model to a clean class distribution: returns `T * clean`.
    pub fn forward(&self, clean: [S; 2]) -> [S; 2] {
        [
            self.t[0][0] * clean[0] + self.t[0][1] * clean[1],
            self.t[1][0] * clean[0] + self.t[1][1] * clean[1],
        ]
    }
}

/// `T * clean_probs`, rejecting inputs that are not a probability vector.
///
/// The input check guards against a malformed upstream softmax; entries must
/// be nonnegative and sum to 1 within 1e-9.
pub fn forward_correct<S: Real>(
    clean_probs: [S; 2],
    t: &TransitionMatrix<S>,
) -> Result<[S; 2]> {
    if clean_probs[0] < S::zero() || clean_probs[1] < S::zero() {
        return Err(Error::NotNormalized(
            (clean_probs[0] + clean_probs[1]).to_f64().unwrap_or(f64::NAN),
        ));
    }
    let sum = clean_probs[0] + clean_probs[1];
    let tol = S::from_f64_lossy(1e-9).max(S::epsilon() * S::from_f64_lossy(8.0));
    if (sum - S::one()).abs() > tol {
        return Err(Error::NotNormalized(sum.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(t.forward(clean_probs))
}

/// Estimate `T` from an NLP validation confusion matrix.
///
/// `confusion[j][i]` counts samples with predicted (noisy) label `j` and true
/// label `i`; each column is normalized by its true-class total.
pub fn estimate_transition<S: Real>(confusion: [[u64; 2]; 2]) -> Result<TransitionMatrix<S>> {
    let mut t = [[S::zero(); 2]; 2];
    for i in 0..2 {
        let total = confusion[0][i] + confusion[1][i];
        if total == 0 {
            return Err(Error::EmptyConfusionColumn(i));
        }
        let total = S::from_f64_lossy(total as f64);
        for j in 0..2 {
            t[j][i] = S::from_f64_lossy(confusion[j][i] as f64) / total;
        }
    }
    TransitionMatrix::new(t)
}

/// Feature matrix with noisy labels and, when known, true labels.
#[derive(Debug, Clone)]
pub struct LabeledFeatureSet<S: Real> {
    features: Vec<S>,
    n: usize,
    d: usize,
    true_labels: Option<Vec<u8>>,
    noisy_labels: Vec<u8>,
}

impl<S: Real> LabeledFeatureSet<S> {
    /// `features` is row-major `n x d`.
    pub fn new(
        features: Vec<S>,
        d: usize,
        true_labels: Option<Vec<u8>>,
        noisy_labels: Vec<u8>,
    ) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidFeatureSet("d must be >= 1".into()));
        }
        if features.is_empty() || features.len() % d != 0 {
            return Err(Error::InvalidFeatureSet(format!(
                "feature length {} is not a nonzero multiple of d = {d}",
                features.len()
            )));
        }
        let n = features.len() / d;
        if noisy_labels.len() != n {
            return Err(Error::InvalidFeatureSet(format!(
                "{} noisy labels for {n} rows",
                noisy_labels.len()
            )));
        }
        if let Some(tl) = &true_labels {
            if tl.len() != n {
                return Err(Error::InvalidFeatureSet(format!(
                    "{} true labels for {n} rows",
                    tl.len()
                )));
            }
            if tl.iter().any(|&l| l > 1) {
                return Err(Error::InvalidFeatureSet("true labels must be 0/1".into()));
            }
        }
        if noisy_labels.iter().any(|&l| l > 1) {
            return Err(Error::InvalidFeatureSet("noisy labels must be 0/1".into()));
        }
        if features.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidFeatureSet("non-finite feature value".into()));
        }
        Ok(Self {
            features,
            n,
            d,
            true_labels,
            noisy_labels,
        })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.features[i * self.d..(i + 1) * self.d]
    }

    pub fn noisy_labels(&self) -> &[u8] {
        &self.noisy_labels
    }

    pub fn true_labels(&self) -> Option<&[u8]> {
        self.true_labels.as_deref()
    }

    /// Replace the noisy labels, e.g. after injecting synthetic flips.
    pub fn set_noisy_labels(&mut self, noisy: Vec<u8>) -> Result<()> {
        if noisy.len() != self.n || noisy.iter().any(|&l| l > 1) {
            return Err(Error::InvalidFeatureSet("bad noisy label vector".into()));
        }
        self.noisy_labels = noisy;
        Ok(())
    }

    /// Borrow a subset of rows as an owned batch.
    pub fn subset(&self, idx: &[usize]) -> Self {
        let mut features = Vec::with_capacity(idx.len() * self.d);
        let mut noisy = Vec::with_capacity(idx.len());
        let mut truth = self.true_labels.as_ref().map(|_| Vec::with_capacity(idx.len()));
        for &i in idx {
            features.extend_from_slice(self.row(i));
            noisy.push(self.noisy_labels[i]);
            if let (Some(out), Some(tl)) = (truth.as_mut(), self.true_labels.as_ref()) {
                out.push(tl[i]);
            }
        }
        Self {
            features,
            n: idx.len(),
            d: self.d,
            true_labels: truth,
            noisy_labels: noisy,
        }
    }
}

/// Two-class linear model: `logits = [bias[0], bias[1] + w . x]`, softmax on top.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearClassifier<S: Real> {
    pub weights: Vec<S>,
    pub bias: [S; 2],
}

impl<S: Real> LinearClassifier<S> {
    pub fn zeros(d: usize) -> Self {
        Self {
            weights: vec![S::zero(); d],
            bias: [S::zero(); 2],
        }
    }

    fn logits(&self, x: &[S]) -> [S; 2] {
        let z: S = self
            .weights
            .iter()
            .zip(x)
            .map(|(&w, &xi)| w * xi)
            .sum();
        [self.bias[0], self.bias[1] + z]
    }

    /// Clean-posterior estimate `softmax(logits)`.
    pub fn probs(&self, x: &[S]) -> [S; 2] {
        softmax2(self.logits(x))
    }
}

fn softmax2<S: Real>(logits: [S; 2]) -> [S; 2] {
    let m = logits[0].max(logits[1]);
    let e0 = (logits[0] - m).exp();
    let e1 = (logits[1] - m).exp();
    let z = e0 + e1;
    [e0 / z, e1 / z]
}

/// Prediction mode: clean returns the softmax output directly (T = I);
/// noisy pushes it through the flip model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictMode {
    Clean,
    Noisy,
}

/// Per-row class probabilities.
pub fn predict<S: Real>(
    classifier: &LinearClassifier<S>,
    features: &LabeledFeatureSet<S>,
    mode: PredictMode,
    t: &TransitionMatrix<S>,
) -> Vec<[S; 2]> {
    (0..features.len())
        .map(|i| {
            let p = classifier.probs(features.row(i));
            match mode {
                PredictMode::Clean => p,
                PredictMode::Noisy => t.forward(p),
            }
        })
        .collect()
}

const LOG_CLAMP: f64 = 1e-12;

/// Mean cross entropy between noisy labels and `T * softmax(logits)`.
///
/// A corrected probability of exactly 0 is clamped at 1e-12 so the loss
/// stays finite.
pub fn corrected_loss<S: Real>(
    classifier: &LinearClassifier<S>,
    batch: &LabeledFeatureSet<S>,
    t: &TransitionMatrix<S>,
) -> Result<S> {
    let clamp = S::from_f64_lossy(LOG_CLAMP);
    let mut total = S::zero();
    for i in 0..batch.len() {
        let p = classifier.probs(batch.row(i));
        let q = t.forward(p);
        let label = batch.noisy_labels()[i] as usize;
        total = total - q[label].max(clamp).ln();
    }
    Ok(total / S::from_usize_lossy(batch.len()))
}

/// Gradient of [`corrected_loss`] with the same parameter layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradient<S: Real> {
    pub weights: Vec<S>,
    pub bias: [S; 2],
}

impl<S: Real> Gradient<S> {
    pub fn norm(&self) -> S {
        let mut s = self.bias[0] * self.bias[0] + self.bias[1] * self.bias[1];
        for &w in &self.weights {
            s = s + w * w;
        }
        s.sqrt()
    }
}

/// Analytic gradient of the corrected loss.
///
/// With `q = T p` and observed label `j`, the per-sample gradient w.r.t.
/// logit `k` is `-p_k (T[j][k] - q_j) / q_j`; the identity-`T` case reduces
/// to the usual `p - onehot(j)`.
pub fn loss_gradient<S: Real>(
    classifier: &LinearClassifier<S>,
    batch: &LabeledFeatureSet<S>,
    t: &TransitionMatrix<S>,
) -> Result<Gradient<S>> {
    let clamp = S::from_f64_lossy(LOG_CLAMP);
    let d = batch.dim();
    let mut gw = vec![S::zero(); d];
    let mut gb = [S::zero(); 2];
    for i in 0..batch.len() {
        let x = batch.row(i);
        let p = classifier.probs(x);
        let q = t.forward(p);
        let j = batch.noisy_labels()[i] as usize;
        let qj = q[j].max(clamp);
        for k in 0..2 {
            let g = -(p[k] * (t.entry(j, k) - qj) / qj);
            gb[k] = gb[k] + g;
            if k == 1 {
                for (gwi, &xi) in gw.iter_mut().zip(x) {
                    *gwi = *gwi + g * xi;
                }
            }
        }
    }
    let inv_n = S::one() / S::from_usize_lossy(batch.len());
    for g in gw.iter_mut() {
        *g = *g * inv_n;
    }
    gb[0] = gb[0] * inv_n;
    gb[1] = gb[1] * inv_n;
    Ok(Gradient { weights: gw, bias: gb })
}

/// Training hyperparameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainConfig {
    pub learning_rate: f64,
    pub lr_decay_factor: f64,
    pub patience_epochs: usize,
    pub max_epochs: usize,
    pub seed: u64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            learning_rate: 1e-4,
            lr_decay_factor: 10.0,
            patience_epochs: 5,
            max_epochs: 100,
            seed: 0,
        }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<()> {
        if !(self.learning_rate > 0.0) {
            return Err(Error::InvalidConfig("learning_rate must be > 0".into()));
        }
        if !(self.lr_decay_factor > 0.0) {
            return Err(Error::InvalidConfig("lr_decay_factor must be > 0".into()));
        }
        if self.patience_epochs == 0 {
            return Err(Error::InvalidConfig("patience_epochs must be >= 1".into()));
        }
        Ok(())
    }
}

/// Full-batch gradient descent with plateau-triggered learning-rate decay.
///
/// The data is shuffled once with the run seed and split 80/20 into train
/// and validation; the learning rate drops by `lr_decay_factor` after
/// `patience_epochs` epochs without validation improvement, and the
/// parameters with the best validation loss are returned. Deterministic
/// given identical inputs and seed.
pub fn train<S: Real>(
    data: &LabeledFeatureSet<S>,
    t: &TransitionMatrix<S>,
    cfg: &TrainConfig,
) -> Result<LinearClassifier<S>> {
    cfg.validate()?;
    let d = data.dim();

    let mut rng = sub_rng(cfg.seed, "train/init", 0);
    let mut model = LinearClassifier::zeros(d);
    for w in model.weights.iter_mut() {
        *w = S::from_f64_lossy(rng.gen_range(-0.01..0.01));
    }
    if cfg.max_epochs == 0 {
        return Ok(model);
    }

    let mut idx: Vec<usize> = (0..data.len()).collect();
    shuffle(&mut idx, &mut sub_rng(cfg.seed, "train/split", 0));
    let n_val = data.len() / 5;
    let (train_idx, val_idx) = idx.split_at(data.len() - n_val);
    let train_set = data.subset(train_idx);
    // Tiny inputs can leave the validation split empty; fall back to
    // monitoring the training loss.
    let val_set = if val_idx.is_empty() {
        train_set.clone()
    } else {
        data.subset(val_idx)
    };

    let mut lr = cfg.learning_rate;
    let mut best = model.clone();
    let mut best_val = corrected_loss(&model, &val_set, t)?;
    let mut stale = 0usize;

    for epoch in 0..cfg.max_epochs {
        let grad = loss_gradient(&model, &train_set, t)?;
        let step = S::from_f64_lossy(lr);
        for (w, g) in model.weights.iter_mut().zip(&grad.weights) {
            *w = *w - step * *g;
        }
        model.bias[0] = model.bias[0] - step * grad.bias[0];
        model.bias[1] = model.bias[1] - step * grad.bias[1];

        let val = corrected_loss(&model, &val_set, t)?;
        if !val.is_finite() {
            return Err(Error::NonFiniteLoss { epoch, lr });
        }
        if val < best_val {
            best_val = val;
            best = model.clone();
            stale = 0;
        } else {
            stale += 1;
            if stale >= cfg.patience_epochs {
                lr /= cfg.lr_decay_factor;
                stale = 0;
            }
        }
    }
    Ok(best)
}

/// Fisher-Yates with a caller-owned RNG; kept local so the shuffle order is
/// pinned by this crate rather than a rand version.
fn shuffle<T>(items: &mut [T], rng: &mut impl Rng) {
    for i in (1..items.len()).rev() {
        let j = rng.gen_range(0..=i);
        items.swap(i, j);
    }
}

/// The Table-style pooled report-classifier confusion counts used as the
/// default transition estimate: rows = predicted label, cols = true label.
pub const POOLED_REPORT_CONFUSION: [[u64; 2]; 2] = [[428, 29], [33, 510]];

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn table_t() -> TransitionMatrix<f64> {
        estimate_transition(POOLED_REPORT_CONFUSION).unwrap()
    }

    #[test]
    fn forward_correct_identity_passthrough() {
        let out = forward_correct([0.3, 0.7], &TransitionMatrix::identity()).unwrap();
        assert_eq!(out, [0.3, 0.7]);
    }

    #[test]
    fn forward_correct_pooled_estimate() {
        let out = forward_correct([1.0, 0.0], &table_t()).unwrap();
        assert_relative_eq!(out[0], 428.0 / 461.0, max_relative = 1e-12);
        assert_relative_eq!(out[1], 33.0 / 461.0, max_relative = 1e-12);
        assert_relative_eq!(out[0], 0.9284, epsilon = 1e-4);
        assert_relative_eq!(out[1], 0.0716, epsilon = 1e-4);
    }

    #[test]
    fn forward_correct_preserves_simplex() {
        let out = forward_correct([0.5, 0.5], &table_t()).unwrap();
        assert!(out[0] >= 0.0 && out[1] >= 0.0);
        assert_relative_eq!(out[0] + out[1], 1.0, epsilon = 1e-9);
    }

    #[test]
    fn forward_correct_rejects_unnormalized() {
        assert!(forward_correct([0.3, 0.3], &table_t()).is_err());
        assert!(forward_correct([-0.1, 1.1], &table_t()).is_err());
    }

    #[test]
    fn estimate_pooled_counts() {
        let t = table_t();
        assert_relative_eq!(t.entry(0, 0), 0.9284, epsilon = 1e-4);
        assert_relative_eq!(t.entry(1, 0), 0.0716, epsilon = 1e-4);
        assert_relative_eq!(t.entry(0, 1), 0.0538, epsilon = 1e-4);
        assert_relative_eq!(t.entry(1, 1), 0.9462, epsilon = 1e-4);
    }

    #[test]
    fn estimate_identity_and_flip() {
        let id: TransitionMatrix<f64> = estimate_transition([[10, 0], [0, 10]]).unwrap();
        assert!(id.is_identity());
        let flip: TransitionMatrix<f64> = estimate_transition([[0, 5], [5, 0]]).unwrap();
        assert_eq!(flip.rows(), [[0.0, 1.0], [1.0, 0.0]]);
    }

    #[test]
    fn estimate_rejects_empty_column() {
        let r: Result<TransitionMatrix<f64>> = estimate_transition([[0, 5], [0, 10]]);
        assert!(matches!(r, Err(Error::EmptyConfusionColumn(0))));
    }

    #[test]
    fn transition_rejects_non_stochastic() {
        assert!(TransitionMatrix::new([[0.5, 0.2], [0.4, 0.8]]).is_err());
        assert!(TransitionMatrix::new([[1.5, 0.0], [-0.5, 1.0]]).is_err());
    }

    fn tiny_batch(noisy: Vec<u8>, rows: Vec<Vec<f64>>) -> LabeledFeatureSet<f64> {
        let d = rows[0].len();
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        LabeledFeatureSet::new(flat, d, None, noisy).unwrap()
    }

    #[test]
    fn corrected_loss_single_sample_arithmetic() {
        // clean probs (0.6, 0.4): solve logits so softmax gives them exactly.
        let mut clf = LinearClassifier::zeros(1);
        clf.bias = [0.0, (0.4f64 / 0.6).ln()];
        let p = clf.probs(&[0.0]);
        assert_relative_eq!(p[0], 0.6, epsilon = 1e-12);
        let batch = tiny_batch(vec![1], vec![vec![0.0]]);
        let t = table_t();
        let expected = -(0.6 * t.entry(1, 0) + 0.4 * t.entry(1, 1)).ln();
        let loss = corrected_loss(&clf, &batch, &t).unwrap();
        assert_relative_eq!(loss, expected, max_relative = 1e-12);
        // and against 4-decimal rounded entries
        assert_relative_eq!(loss, -(0.6 * 0.0716 + 0.4 * 0.9462f64).ln(), epsilon = 1e-4);
    }

    #[test]
    fn corrected_loss_identity_is_plain_cross_entropy() {
        let clf = LinearClassifier {
            weights: vec![0.7, -0.3],
            bias: [0.1, -0.2],
        };
        let batch = tiny_batch(
            vec![0, 1, 1, 0],
            vec![
                vec![1.0, 2.0],
                vec![-0.5, 0.25],
                vec![3.0, -1.0],
                vec![0.0, 0.0],
            ],
        );
        let corrected =
            corrected_loss(&clf, &batch, &TransitionMatrix::identity()).unwrap();
        let mut plain = 0.0;
        for i in 0..batch.len() {
            let p = clf.probs(batch.row(i));
            plain -= p[batch.noisy_labels()[i] as usize].ln();
        }
        plain /= batch.len() as f64;
        assert_eq!(corrected.to_bits(), plain.to_bits());
    }

    #[test]
    fn loss_is_zero_for_confident_correct_predictions() {
        let clf = LinearClassifier {
            weights: vec![100.0],
            bias: [0.0, -50.0],
        };
        // x = 1 -> logit1 = 50 -> p1 ~ 1; x = -1 -> logit1 = -150 -> p0 ~ 1
        let batch = tiny_batch(vec![1, 0], vec![vec![1.0], vec![-1.0]]);
        let loss = corrected_loss(&clf, &batch, &TransitionMatrix::identity()).unwrap();
        assert!(loss < 1e-15, "loss = {loss}");
    }

    /// Central finite differences over all parameters.
    pub(crate) fn fd_gradient(
        clf: &LinearClassifier<f64>,
        batch: &LabeledFeatureSet<f64>,
        t: &TransitionMatrix<f64>,
        h: f64,
    ) -> Gradient<f64> {
        let perturb = |f: &mut dyn FnMut(&mut LinearClassifier<f64>, f64)| {
            let mut c = clf.clone();
            f(&mut c, h);
            let hi = corrected_loss(&c, batch, t).unwrap();
            let mut c = clf.clone();
            f(&mut c, -h);
            let lo = corrected_loss(&c, batch, t).unwrap();
            (hi - lo) / (2.0 * h)
        };
        let weights = (0..clf.weights.len())
            .map(|k| perturb(&mut |c, eps| c.weights[k] += eps))
            .collect();
        let bias = [
            perturb(&mut |c, eps| c.bias[0] += eps),
            perturb(&mut |c, eps| c.bias[1] += eps),
        ];
        Gradient { weights, bias }
    }

    fn assert_grad_close(a: &Gradient<f64>, b: &Gradient<f64>, rel: f64) {
        let check = |x: f64, y: f64| {
            let denom = x.abs().max(y.abs()).max(1e-8);
            assert!(
                (x - y).abs() / denom <= rel,
                "grad mismatch: {x} vs {y}"
            );
        };
        for (x, y) in a.weights.iter().zip(&b.weights) {
            check(*x, *y);
        }
        check(a.bias[0], b.bias[0]);
        check(a.bias[1], b.bias[1]);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let clf = LinearClassifier {
            weights: vec![0.4, -1.2, 0.05],
            bias: [0.3, -0.1],
        };
        let batch = tiny_batch(
            vec![0, 1, 1, 0, 1],
            vec![
                vec![1.0, 2.0, -0.3],
                vec![-0.5, 0.25, 1.1],
                vec![3.0, -1.0, 0.0],
                vec![0.2, 0.4, -2.0],
                vec![-1.5, 0.9, 0.7],
            ],
        );
        let t = table_t();
        let g = loss_gradient(&clf, &batch, &t).unwrap();
        let fd = fd_gradient(&clf, &batch, &t, 1e-5);
        assert_grad_close(&g, &fd, 1e-4);
    }

    #[test]
    fn gradient_identity_equals_softmax_ce_gradient() {
        let clf = LinearClassifier {
            weights: vec![0.4, -1.2],
            bias: [0.3, -0.1],
        };
        let batch = tiny_batch(
            vec![0, 1, 1],
            vec![vec![1.0, 2.0], vec![-0.5, 0.25], vec![3.0, -1.0]],
        );
        let g = loss_gradient(&clf, &batch, &TransitionMatrix::identity()).unwrap();
        // plain softmax CE gradient: (p - onehot) per logit
        let mut gw = vec![0.0; 2];
        let mut gb = [0.0; 2];
        for i in 0..batch.len() {
            let p = clf.probs(batch.row(i));
            let y = batch.noisy_labels()[i] as usize;
            for k in 0..2 {
                let gk = p[k] - if k == y { 1.0 } else { 0.0 };
                gb[k] += gk;
                if k == 1 {
                    for (w, &x) in gw.iter_mut().zip(batch.row(i)) {
                        *w += gk * x;
                    }
                }
            }
        }
        let n = batch.len() as f64;
        for (a, b) in g.weights.iter().zip(&gw) {
            assert_relative_eq!(*a, b / n, max_relative = 1e-12);
        }
        assert_relative_eq!(g.bias[0], gb[0] / n, max_relative = 1e-12);
        assert_relative_eq!(g.bias[1], gb[1] / n, max_relative = 1e-12);
    }

    #[test]
    fn gradient_vanishes_at_perfect_fit() {
        let clf = LinearClassifier {
            weights: vec![200.0],
            bias: [0.0, -100.0],
        };
        let batch = tiny_batch(vec![1, 0], vec![vec![1.0], vec![-1.0]]);
        let g = loss_gradient(&clf, &batch, &TransitionMatrix::identity()).unwrap();
        assert!(g.norm() < 1e-12);
    }

    #[test]
    fn zero_epochs_returns_initialization() {
        let batch = tiny_batch(vec![0, 1], vec![vec![1.0], vec![-1.0]]);
        let cfg = TrainConfig {
            max_epochs: 0,
            seed: 42,
            ..Default::default()
        };
        let m = train(&batch, &TransitionMatrix::identity(), &cfg).unwrap();
        let mut rng = sub_rng(42, "train/init", 0);
        let w0: f64 = rng.gen_range(-0.01..0.01);
        assert_eq!(m.weights, vec![w0]);
        assert_eq!(m.bias, [0.0, 0.0]);
    }

    #[test]
    fn training_is_deterministic() {
        let batch = tiny_batch(
            vec![0, 1, 1, 0, 1, 0],
            (0..6).map(|i| vec![i as f64 - 2.5, (i % 2) as f64]).collect(),
        );
        let cfg = TrainConfig {
            learning_rate: 0.1,
            max_epochs: 50,
            seed: 9,
            ..Default::default()
        };
        let a = train(&batch, &TransitionMatrix::identity(), &cfg).unwrap();
        let b = train(&batch, &TransitionMatrix::identity(), &cfg).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn predict_modes_agree_under_identity() {
        let clf = LinearClassifier {
            weights: vec![0.3],
            bias: [0.0, 0.1],
        };
        let batch = tiny_batch(vec![0, 1], vec![vec![1.0], vec![-2.0]]);
        let id = TransitionMatrix::identity();
        let clean = predict(&clf, &batch, PredictMode::Clean, &id);
        let noisy = predict(&clf, &batch, PredictMode::Noisy, &id);
        for (c, n) in clean.iter().zip(&noisy) {
            assert_eq!(c[0].to_bits(), n[0].to_bits());
            assert_eq!(c[1].to_bits(), n[1].to_bits());
        }
    }

    #[test]
    fn zero_model_predicts_uniform() {
        let clf = LinearClassifier::zeros(2);
        let batch = tiny_batch(vec![0], vec![vec![4.0, -3.0]]);
        let p = predict(&clf, &batch, PredictMode::Clean, &TransitionMatrix::identity());
        assert_eq!(p[0], [0.5, 0.5]);
    }

    #[test]
    fn noisy_mode_applies_table_estimate() {
        let clf = LinearClassifier {
            weights: vec![0.0],
            bias: [1000.0, 0.0],
        };
        let batch = tiny_batch(vec![0], vec![vec![0.0]]);
        let p = predict(&clf, &batch, PredictMode::Noisy, &table_t());
        assert_relative_eq!(p[0][0], 0.9284, epsilon = 1e-4);
        assert_relative_eq!(p[0][1], 0.0716, epsilon = 1e-4);
    }
}
