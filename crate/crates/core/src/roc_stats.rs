//! ROC curves, AUC, DeLong's test for correlated AUCs, Fleiss' kappa, and
//! operating-point selection.
//!
//! AUC uses the Mann-Whitney midrank convention: a tied (positive, negative)
//! pair contributes 0.5. DeLong variances are built from the same placement
//! values, so the two agree by construction.

use crate::error::{Error, Result};
use crate::scalar::Real;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

/// One model score paired with its reference label (1 = abnormal).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredSample<S: Real> {
    pub score: S,
    pub label: u8,
}

impl<S: Real> ScoredSample<S> {
    pub fn new(score: S, label: u8) -> Self {
        Self { score, label }
    }
}

fn validate_samples<S: Real>(samples: &[ScoredSample<S>]) -> Result<(usize, usize)> {
    let mut pos = 0usize;
    let mut neg = 0usize;
    for (i, s) in samples.iter().enumerate() {
        if !s.score.is_finite() {
            return Err(Error::NonFiniteScore(i));
        }
        if s.label == 1 {
            pos += 1;
        } else {
            neg += 1;
        }
    }
    if pos == 0 || neg == 0 {
        return Err(Error::SingleClass);
    }
    Ok((pos, neg))
}

/// Midranks (1-based, ties averaged) of `values`.
fn midranks<S: Real>(values: &[S]) -> Vec<S> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ranks = vec![S::zero(); n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // average of 1-based positions i+1 ..= j+1
        let rank = S::from_usize_lossy(i + j + 2) / S::from_f64_lossy(2.0);
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Placement values: for each positive, the fraction of negatives it beats
/// (ties at 0.5), and symmetrically for each negative. Mean of either list
/// is the AUC.
fn placements<S: Real>(
    scores: &[S],
    labels: &[u8],
) -> (Vec<S>, Vec<S>) {
    let combined = midranks(scores);
    let pos_scores: Vec<S> = scores
        .iter()
        .zip(labels)
        .filter(|(_, &l)| l == 1)
        .map(|(&s, _)| s)
        .collect();
    let neg_scores: Vec<S> = scores
        .iter()
        .zip(labels)
        .filter(|(_, &l)| l == 0)
        .map(|(&s, _)| s)
        .collect();
    let pos_ranks = midranks(&pos_scores);
    let neg_ranks = midranks(&neg_scores);
    let m = S::from_usize_lossy(pos_scores.len());
    let n = S::from_usize_lossy(neg_scores.len());

    let mut v10 = Vec::with_capacity(pos_scores.len());
    let mut v01 = Vec::with_capacity(neg_scores.len());
    let mut pi = 0usize;
    let mut ni = 0usize;
    for (i, &l) in labels.iter().enumerate() {
        if l == 1 {
            v10.push((combined[i] - pos_ranks[pi]) / n);
            pi += 1;
        } else {
            v01.push(S::one() - (combined[i] - neg_ranks[ni]) / m);
            ni += 1;
        }
    }
    (v10, v01)
}

/// Mann-Whitney AUC with midrank tie handling.
///
/// The Mann-Whitney statistic `U` is a half-integer and is accumulated
/// exactly; a single division by `m * n` at the end makes the result
/// bit-identical to brute-force pair counting.
pub fn auc<S: Real>(samples: &[ScoredSample<S>]) -> Result<S> {
    let (pos, neg) = validate_samples(samples)?;
    let scores: Vec<S> = samples.iter().map(|s| s.score).collect();
    let ranks = midranks(&scores);
    let rank_sum: S = ranks
        .iter()
        .zip(samples)
        .filter(|(_, s)| s.label == 1)
        .map(|(&r, _)| r)
        .sum();
    let u = rank_sum - S::from_usize_lossy(pos * (pos + 1) / 2);
    Ok(u / S::from_usize_lossy(pos * neg))
}

/// One ROC point: the rates obtained by calling `score >= threshold` positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RocPoint<S: Real> {
    pub fpr: S,
    pub tpr: S,
    pub threshold: S,
}

/// ROC curve from (0,0) at threshold +inf to (1,1) at the minimum score.
#[derive(Debug, Clone, PartialEq)]
pub struct RocCurve<S: Real> {
    points: Vec<RocPoint<S>>,
}

impl<S: Real> RocCurve<S> {
    pub fn points(&self) -> &[RocPoint<S>] {
        &self.points
    }

    /// Trapezoidal area; equals the Mann-Whitney AUC of the source samples.
    pub fn area(&self) -> S {
        let half = S::from_f64_lossy(0.5);
        let mut area = S::zero();
        for w in self.points.windows(2) {
            area = area + (w[1].fpr - w[0].fpr) * (w[1].tpr + w[0].tpr) * half;
        }
        area
    }
}

/// ROC curve with one point per distinct threshold.
pub fn roc_curve<S: Real>(samples: &[ScoredSample<S>]) -> Result<RocCurve<S>> {
    let (pos, neg) = validate_samples(samples)?;
    let mut sorted: Vec<&ScoredSample<S>> = samples.iter().collect();
    sorted.sort_by(|a, b| b.score.partial_cmp(&a.score).unwrap());
    let m = S::from_usize_lossy(pos);
    let n = S::from_usize_lossy(neg);

    let mut points = vec![RocPoint {
        fpr: S::zero(),
        tpr: S::zero(),
        threshold: S::infinity(),
    }];
    let mut tp = 0usize;
    let mut fp = 0usize;
    let mut i = 0;
    while i < sorted.len() {
        let threshold = sorted[i].score;
        while i < sorted.len() && sorted[i].score == threshold {
            if sorted[i].label == 1 {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        points.push(RocPoint {
            fpr: S::from_usize_lossy(fp) / n,
            tpr: S::from_usize_lossy(tp) / m,
            threshold,
        });
    }
    Ok(RocCurve { points })
}

/// DeLong comparison of two correlated AUCs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DelongResult {
    pub auc_a: f64,
    pub auc_b: f64,
    pub variance_of_difference: f64,
    pub z: f64,
    pub p_two_sided: f64,
    /// Set when the placement-value variance collapses to zero and the
    /// normal approximation degenerates.
    pub degenerate_variance: bool,
}

fn sample_cov<S: Real>(a: &[S], b: &[S]) -> S {
    let n = a.len();
    if n < 2 {
        return S::zero();
    }
    let nf = S::from_usize_lossy(n);
    let ma = a.iter().copied().sum::<S>() / nf;
    let mb = b.iter().copied().sum::<S>() / nf;
    let mut s = S::zero();
    for (&x, &y) in a.iter().zip(b) {
        s = s + (x - ma) * (y - mb);
    }
    s / S::from_usize_lossy(n - 1)
}

fn std_normal_two_sided(z: f64) -> f64 {
    erfc(z.abs() / std::f64::consts::SQRT_2)
}

/// DeLong's test for the difference of two AUCs measured on the same samples.
pub fn delong_test<S: Real>(
    scores_a: &[S],
    scores_b: &[S],
    labels: &[u8],
) -> Result<DelongResult> {
    if scores_a.len() != scores_b.len() || scores_a.len() != labels.len() || labels.is_empty() {
        return Err(Error::LengthMismatch);
    }
    for (i, s) in scores_a.iter().chain(scores_b.iter()).enumerate() {
        if !s.is_finite() {
            return Err(Error::NonFiniteScore(i % labels.len()));
        }
    }
    let m = labels.iter().filter(|&&l| l == 1).count();
    let n = labels.len() - m;
    if m == 0 || n == 0 {
        return Err(Error::SingleClass);
    }

    let (v10_a, v01_a) = placements(scores_a, labels);
    let (v10_b, v01_b) = placements(scores_b, labels);
    let mean = |v: &[S]| (v.iter().copied().sum::<S>() / S::from_usize_lossy(v.len()))
        .to_f64()
        .unwrap();
    let auc_a = mean(&v10_a);
    let auc_b = mean(&v10_b);

    let s10_aa = sample_cov(&v10_a, &v10_a).to_f64().unwrap();
    let s10_bb = sample_cov(&v10_b, &v10_b).to_f64().unwrap();
    let s10_ab = sample_cov(&v10_a, &v10_b).to_f64().unwrap();
    let s01_aa = sample_cov(&v01_a, &v01_a).to_f64().unwrap();
    let s01_bb = sample_cov(&v01_b, &v01_b).to_f64().unwrap();
    let s01_ab = sample_cov(&v01_a, &v01_b).to_f64().unwrap();

    let var = (s10_aa + s10_bb - 2.0 * s10_ab) / m as f64
        + (s01_aa + s01_bb - 2.0 * s01_ab) / n as f64;
    let var = var.max(0.0);
    let diff = auc_a - auc_b;

    if var == 0.0 {
        // Degenerate: no sampling variability in the placement differences.
        return Ok(DelongResult {
            auc_a,
            auc_b,
            variance_of_difference: 0.0,
            z: if diff == 0.0 {
                0.0
            } else {
                diff.signum() * f64::INFINITY
            },
            p_two_sided: if diff == 0.0 { 1.0 } else { 0.0 },
            degenerate_variance: diff != 0.0,
        });
    }

    let z = diff / var.sqrt();
    Ok(DelongResult {
        auc_a,
        auc_b,
        variance_of_difference: var,
        z,
        p_two_sided: std_normal_two_sided(z).min(1.0),
        degenerate_variance: false,
    })
}

/// Subjects x categories table of rater counts.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingsTable {
    counts: Vec<Vec<u32>>,
    raters_per_subject: u32,
}

impl RatingsTable {
    pub fn new(counts: Vec<Vec<u32>>, raters_per_subject: u32) -> Result<Self> {
        if raters_per_subject < 2 {
            return Err(Error::InvalidRatings(
                "need at least 2 raters per subject".into(),
            ));
        }
        if counts.is_empty() {
            return Err(Error::InvalidRatings("empty table".into()));
        }
        let k = counts[0].len();
        if k < 2 {
            return Err(Error::InvalidRatings("need at least 2 categories".into()));
        }
        for (i, row) in counts.iter().enumerate() {
            if row.len() != k {
                return Err(Error::InvalidRatings(format!("ragged row {i}")));
            }
            let sum: u32 = row.iter().sum();
            if sum != raters_per_subject {
                return Err(Error::InvalidRatings(format!(
                    "row {i} sums to {sum}, expected {raters_per_subject}"
                )));
            }
        }
        Ok(Self {
            counts,
            raters_per_subject,
        })
    }

    pub fn n_subjects(&self) -> usize {
        self.counts.len()
    }

    pub fn n_categories(&self) -> usize {
        self.counts[0].len()
    }
}

/// Fleiss' kappa: `(P_bar - P_e) / (1 - P_e)`.
pub fn fleiss_kappa(table: &RatingsTable) -> Result<f64> {
    let n = table.n_subjects() as f64;
    let r = table.raters_per_subject as f64;
    let k = table.n_categories();

    let mut p_cat = vec![0.0f64; k];
    let mut p_bar = 0.0f64;
    for row in &table.counts {
        let mut agree = 0.0;
        for (j, &c) in row.iter().enumerate() {
            let c = c as f64;
            p_cat[j] += c;
            agree += c * (c - 1.0);
        }
        p_bar += agree / (r * (r - 1.0));
    }
    p_bar /= n;
    let p_e: f64 = p_cat
        .iter()
        .map(|&c| {
            let p = c / (n * r);
            p * p
        })
        .sum();
    if (1.0 - p_e).abs() < f64::EPSILON {
        return Err(Error::KappaUndefined);
    }
    Ok((p_bar - p_e) / (1.0 - p_e))
}

/// How to pick a threshold on a ROC curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OperatingStrategy<S: Real> {
    /// Maximize `tpr - fpr`; ties resolved toward the lower threshold
    /// (higher sensitivity).
    Youden,
    /// Lowest-fpr point with `tpr >= floor`.
    SensitivityFloor(S),
    /// The point induced by an explicit score threshold.
    Threshold(S),
}

/// A selected ROC operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatingPoint<S: Real> {
    pub threshold: S,
    pub fpr: S,
    pub tpr: S,
}

impl<S: Real> From<RocPoint<S>> for OperatingPoint<S> {
    fn from(p: RocPoint<S>) -> Self {
        Self {
            threshold: p.threshold,
            fpr: p.fpr,
            tpr: p.tpr,
        }
    }
}

/// Select an operating point on the curve.
pub fn operating_point<S: Real>(
    curve: &RocCurve<S>,
    strategy: OperatingStrategy<S>,
) -> Result<OperatingPoint<S>> {
    let pts = curve.points();
    match strategy {
        OperatingStrategy::Youden => {
            // points run from high to low threshold; >= keeps the last
            // (lowest-threshold) maximizer
            let mut best = pts[0];
            for &p in pts {
                if p.tpr - p.fpr >= best.tpr - best.fpr {
                    best = p;
                }
            }
            Ok(best.into())
        }
        OperatingStrategy::SensitivityFloor(floor) => pts
            .iter()
            .find(|p| p.tpr >= floor)
            .map(|&p| p.into())
            .ok_or_else(|| Error::SensitivityUnreachable(floor.to_f64().unwrap_or(f64::NAN))),
        OperatingStrategy::Threshold(t) => {
            // the realized point for "score >= t": last curve point whose
            // threshold is still >= t
            let mut chosen = pts[0];
            for &p in pts {
                if p.threshold >= t {
                    chosen = p;
                } else {
                    break;
                }
            }
            Ok(chosen.into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn samples(pairs: &[(f64, u8)]) -> Vec<ScoredSample<f64>> {
        pairs.iter().map(|&(s, l)| ScoredSample::new(s, l)).collect()
    }

    /// O(n^2) Mann-Whitney pair counting, the independent oracle.
    pub(crate) fn brute_force_auc(samples: &[ScoredSample<f64>]) -> f64 {
        let pos: Vec<f64> = samples.iter().filter(|s| s.label == 1).map(|s| s.score).collect();
        let neg: Vec<f64> = samples.iter().filter(|s| s.label == 0).map(|s| s.score).collect();
        let mut num = 0.0;
        for &p in &pos {
            for &n in &neg {
                if p > n {
                    num += 1.0;
                } else if p == n {
                    num += 0.5;
                }
            }
        }
        num / (pos.len() as f64 * neg.len() as f64)
    }

    #[test]
    fn auc_perfect_separation() {
        let s = samples(&[(1.0, 1), (1.0, 1), (0.0, 0), (0.0, 0)]);
        assert_eq!(auc(&s).unwrap(), 1.0);
    }

    #[test]
    fn auc_all_ties_is_half() {
        let s = samples(&[(0.7, 1), (0.7, 0), (0.7, 1), (0.7, 0)]);
        assert_eq!(auc(&s).unwrap(), 0.5);
    }

    #[test]
    fn auc_matches_brute_force_with_ties() {
        use rand::Rng;
        let mut rng = crate::seed::sub_rng(31, "test/auc", 0);
        for _ in 0..20 {
            let n = rng.gen_range(5..200);
            let s: Vec<ScoredSample<f64>> = (0..n)
                .map(|_| {
                    // coarse grid forces ties
                    let score = (rng.gen_range(0..10) as f64) / 10.0;
                    ScoredSample::new(score, rng.gen_range(0..2) as u8)
                })
                .collect();
            let has_both = s.iter().any(|x| x.label == 1) && s.iter().any(|x| x.label == 0);
            if !has_both {
                continue;
            }
            let fast = auc(&s).unwrap();
            let slow = brute_force_auc(&s);
            assert_eq!(fast.to_bits(), slow.to_bits());
        }
    }

    #[test]
    fn auc_rejects_single_class() {
        let s = samples(&[(0.3, 1), (0.9, 1)]);
        assert!(matches!(auc(&s), Err(Error::SingleClass)));
    }

    #[test]
    fn roc_curve_perfect_passes_through_corner() {
        let s = samples(&[(0.9, 1), (0.8, 1), (0.2, 0), (0.1, 0)]);
        let c = roc_curve(&s).unwrap();
        assert!(c.points().iter().any(|p| p.fpr == 0.0 && p.tpr == 1.0));
        assert_eq!(c.area(), 1.0);
    }

    #[test]
    fn roc_curve_all_ties_is_diagonal() {
        let s = samples(&[(0.5, 1), (0.5, 0), (0.5, 1), (0.5, 0)]);
        let c = roc_curve(&s).unwrap();
        assert_eq!(c.points().len(), 2);
        assert_eq!((c.points()[0].fpr, c.points()[0].tpr), (0.0, 0.0));
        assert_eq!((c.points()[1].fpr, c.points()[1].tpr), (1.0, 1.0));
        assert_relative_eq!(c.area(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn roc_area_equals_auc() {
        use rand::Rng;
        let mut rng = crate::seed::sub_rng(32, "test/roc", 0);
        for _ in 0..20 {
            let n = rng.gen_range(10..300);
            let s: Vec<ScoredSample<f64>> = (0..n)
                .map(|_| {
                    ScoredSample::new(
                        (rng.gen_range(0..20) as f64) / 20.0,
                        rng.gen_range(0..2) as u8,
                    )
                })
                .collect();
            if !(s.iter().any(|x| x.label == 1) && s.iter().any(|x| x.label == 0)) {
                continue;
            }
            let area = roc_curve(&s).unwrap().area();
            let mw = auc(&s).unwrap();
            assert_relative_eq!(area, mw, epsilon = 1e-12);
        }
    }

    #[test]
    fn roc_endpoints_and_monotonicity() {
        let s = samples(&[(0.9, 1), (0.3, 0), (0.3, 1), (0.1, 0), (0.5, 0)]);
        let c = roc_curve(&s).unwrap();
        let first = c.points().first().unwrap();
        let last = c.points().last().unwrap();
        assert_eq!((first.fpr, first.tpr), (0.0, 0.0));
        assert_eq!((last.fpr, last.tpr), (1.0, 1.0));
        for w in c.points().windows(2) {
            assert!(w[1].fpr >= w[0].fpr && w[1].tpr >= w[0].tpr);
        }
    }

    #[test]
    fn delong_identical_scores() {
        let a = vec![0.9, 0.8, 0.4, 0.3, 0.7, 0.2];
        let labels = vec![1, 1, 0, 0, 1, 0];
        let r = delong_test(&a, &a, &labels).unwrap();
        assert_eq!(r.z, 0.0);
        assert_eq!(r.p_two_sided, 1.0);
    }

    #[test]
    fn delong_antisymmetry() {
        let a = vec![0.9, 0.8, 0.4, 0.35, 0.7, 0.2, 0.6, 0.5];
        let b = vec![0.1, 0.9, 0.5, 0.4, 0.3, 0.8, 0.2, 0.7];
        let labels = vec![1, 1, 0, 0, 1, 0, 1, 0];
        let ab = delong_test(&a, &b, &labels).unwrap();
        let ba = delong_test(&b, &a, &labels).unwrap();
        assert_relative_eq!(ab.z, -ba.z, max_relative = 1e-12);
        assert_relative_eq!(ab.p_two_sided, ba.p_two_sided, max_relative = 1e-12);
    }

    #[test]
    fn delong_strong_vs_random_is_significant() {
        use rand::Rng;
        let mut rng = crate::seed::sub_rng(33, "test/delong", 0);
        let mut scores_a = Vec::new();
        let mut scores_b = Vec::new();
        let mut labels = Vec::new();
        for i in 0..100 {
            let label = (i % 2) as u8;
            labels.push(label);
            // perfect separation for model a
            scores_a.push(label as f64 + rng.gen_range(-0.4..0.4));
            scores_b.push(rng.gen_range(0.0..1.0));
        }
        let r = delong_test(&scores_a, &scores_b, &labels).unwrap();
        assert!(r.auc_a > 0.95);
        assert!(r.p_two_sided < 0.01, "p = {}", r.p_two_sided);
    }

    #[test]
    fn delong_degenerate_variance_flags() {
        // both models constant: zero variance, equal AUCs
        let a = vec![0.5, 0.5, 0.5, 0.5];
        let labels = vec![1, 0, 1, 0];
        let r = delong_test(&a, &a, &labels).unwrap();
        assert_eq!(r.p_two_sided, 1.0);
        assert!(!r.degenerate_variance);
    }

    #[test]
    fn kappa_perfect_agreement() {
        // 4 subjects, 2 raters, both categories used
        let t = RatingsTable::new(vec![vec![2, 0], vec![0, 2], vec![2, 0], vec![0, 2]], 2).unwrap();
        assert_relative_eq!(fleiss_kappa(&t).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn kappa_chance_agreement_is_zero() {
        // observed agreement equals chance agreement by construction:
        // 2 raters, marginals 50/50, half the subjects agree.
        let t = RatingsTable::new(
            vec![vec![2, 0], vec![0, 2], vec![1, 1], vec![1, 1]],
            2,
        )
        .unwrap();
        assert_relative_eq!(fleiss_kappa(&t).unwrap(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn kappa_matches_direct_formula_on_random_table() {
        use rand::Rng;
        let mut rng = crate::seed::sub_rng(34, "test/kappa", 0);
        let r = 4u32;
        let counts: Vec<Vec<u32>> = (0..100)
            .map(|_| {
                let a = rng.gen_range(0..=r);
                vec![a, r - a]
            })
            .collect();
        let table = RatingsTable::new(counts.clone(), r).unwrap();
        // direct evaluation, written independently of the implementation
        let n = 100.0;
        let rf = r as f64;
        let p0: f64 = counts.iter().map(|c| c[0] as f64).sum::<f64>() / (n * rf);
        let p1 = 1.0 - p0;
        let pbar: f64 = counts
            .iter()
            .map(|c| {
                let a = c[0] as f64;
                let b = c[1] as f64;
                (a * (a - 1.0) + b * (b - 1.0)) / (rf * (rf - 1.0))
            })
            .sum::<f64>()
            / n;
        let pe = p0 * p0 + p1 * p1;
        let expected = (pbar - pe) / (1.0 - pe);
        assert_relative_eq!(fleiss_kappa(&table).unwrap(), expected, max_relative = 1e-12);
    }

    #[test]
    fn kappa_undefined_when_one_category_always_used() {
        let t = RatingsTable::new(vec![vec![2, 0], vec![2, 0]], 2).unwrap();
        assert!(matches!(fleiss_kappa(&t), Err(Error::KappaUndefined)));
    }

    #[test]
    fn youden_on_separated_data() {
        let s = samples(&[(0.9, 1), (0.8, 1), (0.2, 0), (0.1, 0)]);
        let c = roc_curve(&s).unwrap();
        let op = operating_point(&c, OperatingStrategy::Youden).unwrap();
        assert_eq!((op.fpr, op.tpr), (0.0, 1.0));
        assert_eq!(op.threshold, 0.8);
    }

    #[test]
    fn youden_on_diagonal_curve() {
        let s = samples(&[(0.5, 1), (0.5, 0)]);
        let c = roc_curve(&s).unwrap();
        let op = operating_point(&c, OperatingStrategy::Youden).unwrap();
        assert_eq!(op.tpr - op.fpr, 0.0);
    }

    #[test]
    fn youden_matches_exhaustive_scan() {
        use rand::Rng;
        let mut rng = crate::seed::sub_rng(35, "test/youden", 0);
        let s: Vec<ScoredSample<f64>> = (0..150)
            .map(|_| {
                ScoredSample::new(
                    (rng.gen_range(0..25) as f64) / 25.0,
                    rng.gen_range(0..2) as u8,
                )
            })
            .collect();
        let c = roc_curve(&s).unwrap();
        let op = operating_point(&c, OperatingStrategy::Youden).unwrap();
        let best = c
            .points()
            .iter()
            .map(|p| p.tpr - p.fpr)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_relative_eq!(op.tpr - op.fpr, best, epsilon = 1e-15);
    }

    #[test]
    fn sensitivity_floor_picks_lowest_fpr() {
        let s = samples(&[(0.9, 1), (0.7, 0), (0.6, 1), (0.4, 1), (0.2, 0)]);
        let c = roc_curve(&s).unwrap();
        let op = operating_point(&c, OperatingStrategy::SensitivityFloor(0.6)).unwrap();
        assert!(op.tpr >= 0.6);
        let min_fpr = c
            .points()
            .iter()
            .filter(|p| p.tpr >= 0.6)
            .map(|p| p.fpr)
            .fold(f64::INFINITY, f64::min);
        assert_eq!(op.fpr, min_fpr);
        assert!(operating_point(&c, OperatingStrategy::SensitivityFloor(1.5)).is_err());
    }

    #[test]
    fn explicit_threshold_point() {
        let s = samples(&[(0.9, 1), (0.6, 1), (0.4, 0), (0.1, 0)]);
        let c = roc_curve(&s).unwrap();
        let op = operating_point(&c, OperatingStrategy::Threshold(0.5)).unwrap();
        // score >= 0.5 marks both positives, no negatives
        assert_eq!((op.fpr, op.tpr), (0.0, 1.0));
    }
}
