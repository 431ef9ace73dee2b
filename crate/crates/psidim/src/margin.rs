//! Score-vector algebra for multi-category classifiers.
//!
//! A classifier emits a vector of Q real scores per pattern; the category
//! with the strictly largest score wins and ties are rejected. This module
//! provides the margin operators over such vectors — the per-category
//! half-gap map `delta`, its sign-flattened variant `delta_star`, the
//! clamp `pi_gamma` — together with the empirical zero-one and margin
//! risks of labeled samples.
//!
//! Category indices are 0-based throughout the library. File formats that
//! carry 1-based labels convert at the parse boundary.

use crate::error::{Error, Result};

/// Minimum number of categories accepted anywhere in the crate
/// (binary problems are out of scope).
pub const MIN_CATEGORIES: usize = 3;

/// Which margin operator a computation runs through. Risk values are
/// provably identical for both; capacity measures are not.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarginOperator {
    Delta,
    DeltaStar,
}

impl std::fmt::Display for MarginOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MarginOperator::Delta => write!(f, "delta"),
            MarginOperator::DeltaStar => write!(f, "delta-star"),
        }
    }
}

/// Margin scale plus operator choice, validated once at construction.
#[derive(Debug, Clone, Copy)]
pub struct MarginConfig {
    gamma: f64,
    operator: MarginOperator,
}

impl MarginConfig {
    /// Requires `gamma > 0`. Bound evaluators additionally require
    /// `gamma <= 1`; that check lives there, not here.
    pub fn new(gamma: f64, operator: MarginOperator) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::non_positive("gamma", gamma));
        }
        Ok(MarginConfig { gamma, operator })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn operator(&self) -> MarginOperator {
        self.operator
    }
}

/// A vector of Q classifier scores for one pattern, Q >= 3, all finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ScoreVector {
    values: Vec<f64>,
}

impl ScoreVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < MIN_CATEGORIES {
            return Err(Error::TooFewCategories(values.len()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                context: "score vector",
            });
        }
        Ok(ScoreVector { values })
    }

    pub fn q(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Index of the strictly largest score, or `None` when two or more
    /// entries tie for the maximum (rejection, counted as an error).
    pub fn classify(&self) -> Option<usize> {
        let (top, top_value) = argmax(&self.values);
        let tied = self.values.iter().filter(|&&v| v == top_value).count();
        (tied == 1).then_some(top)
    }

    /// Margin of this score vector for category `label`:
    /// half the gap between the label's score and the best other score.
    pub fn margin(&self, label: usize) -> Result<f64> {
        if label >= self.q() {
            return Err(Error::LabelOutOfRange {
                label,
                q: self.q(),
            });
        }
        Ok(half_gap(&self.values, label))
    }

    /// The per-category half-gap vector `(1/2 (v_k - max_{l != k} v_l))_k`.
    pub fn delta(&self) -> ScoreVector {
        let q = self.q();
        let values = (0..q).map(|k| half_gap(&self.values, k)).collect();
        ScoreVector { values }
    }

    /// Largest half-gap, `max_k delta(v)_k`. Always >= 0; zero exactly
    /// when the maximum score is tied.
    pub fn m_x(&self) -> f64 {
        let (top, _) = argmax(&self.values);
        half_gap(&self.values, top)
    }

    /// Sign-flattened half-gap vector: every coordinate keeps its sign
    /// under `delta` but takes magnitude `m_x`. `sign(0)` is taken as 0,
    /// which only occurs when `m_x` is itself 0.
    pub fn delta_star(&self) -> ScoreVector {
        let m = self.m_x();
        let values = self
            .delta()
            .values
            .iter()
            .map(|&d| sign(d) * m)
            .collect();
        ScoreVector { values }
    }

    /// Clamps every coordinate to magnitude at most `gamma`, preserving
    /// signs. Requires `gamma > 0`.
    pub fn pi_gamma(&self, gamma: f64) -> Result<ScoreVector> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::non_positive("gamma", gamma));
        }
        let values = self
            .values
            .iter()
            .map(|&v| sign(v) * v.abs().min(gamma))
            .collect();
        Ok(ScoreVector { values })
    }

    /// Applies the chosen margin operator.
    pub fn delta_sharp(&self, operator: MarginOperator) -> ScoreVector {
        match operator {
            MarginOperator::Delta => self.delta(),
            MarginOperator::DeltaStar => self.delta_star(),
        }
    }

    /// The squashed composition: `pi_gamma` after the chosen operator.
    pub fn delta_gamma_sharp(&self, cfg: &MarginConfig) -> ScoreVector {
        self.delta_sharp(cfg.operator())
            .pi_gamma(cfg.gamma())
            .expect("gamma validated by MarginConfig")
    }
}

/// A score vector paired with its true category.
#[derive(Debug, Clone)]
pub struct LabeledScore {
    score: ScoreVector,
    label: usize,
}

impl LabeledScore {
    pub fn new(score: ScoreVector, label: usize) -> Result<Self> {
        if label >= score.q() {
            return Err(Error::LabelOutOfRange {
                label,
                q: score.q(),
            });
        }
        Ok(LabeledScore { score, label })
    }

    pub fn score(&self) -> &ScoreVector {
        &self.score
    }

    pub fn label(&self) -> usize {
        self.label
    }
}

/// Fraction of samples whose margin-operator image at the true label falls
/// strictly below `gamma`. The comparison is strict `<` with no tolerance.
pub fn empirical_margin_risk(sample: &[LabeledScore], cfg: &MarginConfig) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let violations = sample
        .iter()
        .filter(|ls| ls.score.delta_sharp(cfg.operator()).values[ls.label] < cfg.gamma())
        .count();
    Ok(violations as f64 / sample.len() as f64)
}

/// Fraction of samples misclassified, with ties counted as errors:
/// an error is `v_label <= max_{k != label} v_k`.
pub fn empirical_zero_one_risk(sample: &[LabeledScore]) -> Result<f64> {
    if sample.is_empty() {
        return Err(Error::EmptySample);
    }
    let errors = sample
        .iter()
        .filter(|ls| half_gap(ls.score.values(), ls.label) <= 0.0)
        .count();
    Ok(errors as f64 / sample.len() as f64)
}

/// First index attaining the maximum, with its value.
fn argmax(values: &[f64]) -> (usize, f64) {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    (best, values[best])
}

/// `1/2 (v_k - max_{l != k} v_l)`; shared by `margin`, `delta` and the risks
/// so that they agree bit-for-bit.
fn half_gap(values: &[f64], k: usize) -> f64 {
    let mut best_other = f64::NEG_INFINITY;
    for (l, &v) in values.iter().enumerate() {
        if l != k && v > best_other {
            best_other = v;
        }
    }
    0.5 * (values[k] - best_other)
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(values: &[f64]) -> ScoreVector {
        ScoreVector::new(values.to_vec()).unwrap()
    }

    #[test]
    fn classify_strict_argmax() {
        assert_eq!(sv(&[3.0, 1.0, 0.0]).classify(), Some(0));
        assert_eq!(sv(&[2.0, 2.0, 0.0]).classify(), None);
        assert_eq!(sv(&[0.0, 0.0, 4.0]).classify(), Some(2));
    }

    #[test]
    fn margin_hand_values() {
        assert_eq!(sv(&[3.0, 1.0, 0.0]).margin(0).unwrap(), 1.0);
        assert_eq!(sv(&[3.0, 1.0, 0.0]).margin(1).unwrap(), -1.0);
        assert_eq!(sv(&[0.5, 0.5, 0.5]).margin(2).unwrap(), 0.0);
        assert!(sv(&[3.0, 1.0, 0.0]).margin(3).is_err());
    }

    #[test]
    fn delta_hand_values() {
        assert_eq!(sv(&[3.0, 1.0, 0.0]).delta().values(), &[1.0, -1.0, -1.5]);
        assert_eq!(sv(&[0.25, 0.25, 0.25]).delta().values(), &[0.0, 0.0, 0.0]);
        assert_eq!(sv(&[0.0, 0.0, 4.0]).delta().values(), &[-2.0, -2.0, 2.0]);
    }

    #[test]
    fn m_x_hand_values() {
        assert_eq!(sv(&[3.0, 1.0, 0.0]).m_x(), 1.0);
        assert_eq!(sv(&[0.25, 0.25, 0.25]).m_x(), 0.0);
        assert_eq!(sv(&[0.0, 0.0, 4.0]).m_x(), 2.0);
    }

    #[test]
    fn delta_star_hand_values() {
        assert_eq!(sv(&[3.0, 1.0, 0.0]).delta_star().values(), &[1.0, -1.0, -1.0]);
        assert_eq!(sv(&[0.25, 0.25, 0.25]).delta_star().values(), &[0.0, 0.0, 0.0]);
        assert_eq!(sv(&[0.0, 0.0, 4.0]).delta_star().values(), &[-2.0, -2.0, 2.0]);
    }

    #[test]
    fn pi_gamma_hand_values() {
        assert_eq!(
            sv(&[1.0, -1.0, -1.5]).pi_gamma(0.5).unwrap().values(),
            &[0.5, -0.5, -0.5]
        );
        assert_eq!(
            sv(&[0.2, -0.3, 0.0]).pi_gamma(0.5).unwrap().values(),
            &[0.2, -0.3, 0.0]
        );
        assert_eq!(
            sv(&[1.0, -1.0, -1.5]).pi_gamma(1.0).unwrap().values(),
            &[1.0, -1.0, -1.0]
        );
        assert!(sv(&[1.0, 2.0, 3.0]).pi_gamma(0.0).is_err());
        assert!(sv(&[1.0, 2.0, 3.0]).pi_gamma(-1.0).is_err());
    }

    #[test]
    fn delta_gamma_sharp_hand_values() {
        let d = MarginConfig::new(0.5, MarginOperator::Delta).unwrap();
        let ds = MarginConfig::new(0.5, MarginOperator::DeltaStar).unwrap();
        assert_eq!(
            sv(&[3.0, 1.0, 0.0]).delta_gamma_sharp(&d).values(),
            &[0.5, -0.5, -0.5]
        );
        assert_eq!(
            sv(&[3.0, 1.0, 0.0]).delta_gamma_sharp(&ds).values(),
            &[0.5, -0.5, -0.5]
        );
        let tie = sv(&[0.75, 0.75, 0.75]);
        assert_eq!(tie.delta_gamma_sharp(&d).values(), &[0.0, 0.0, 0.0]);
        assert_eq!(tie.delta_gamma_sharp(&ds).values(), &[0.0, 0.0, 0.0]);
    }

    /// Builds a sample whose delta-image at the label equals the requested
    /// values: score (2t, 0, -x) has delta[0] = t.
    fn sample_with_label_gaps(gaps: &[f64]) -> Vec<LabeledScore> {
        gaps.iter()
            .map(|&t| {
                LabeledScore::new(sv(&[2.0 * t, 0.0, -4.0]), 0).unwrap()
            })
            .collect()
    }

    #[test]
    fn margin_risk_counts_strict_violations() {
        let sample = sample_with_label_gaps(&[1.2, 0.3, -0.5, 0.6]);
        let cfg = MarginConfig::new(0.5, MarginOperator::Delta).unwrap();
        assert_eq!(empirical_margin_risk(&sample, &cfg).unwrap(), 0.5);

        let cfg7 = MarginConfig::new(0.7, MarginOperator::Delta).unwrap();
        assert_eq!(empirical_margin_risk(&sample, &cfg7).unwrap(), 0.75);

        let easy = sample_with_label_gaps(&[1.0, 1.0]);
        let cfg5 = MarginConfig::new(0.5, MarginOperator::DeltaStar).unwrap();
        assert_eq!(empirical_margin_risk(&easy, &cfg5).unwrap(), 0.0);

        assert!(matches!(
            empirical_margin_risk(&[], &cfg),
            Err(Error::EmptySample)
        ));
    }

    #[test]
    fn margin_risk_boundary_is_strict() {
        // Gap exactly at gamma is not a violation.
        let sample = sample_with_label_gaps(&[0.5]);
        let cfg = MarginConfig::new(0.5, MarginOperator::Delta).unwrap();
        assert_eq!(empirical_margin_risk(&sample, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn zero_one_risk_hand_values() {
        let sample = vec![
            LabeledScore::new(sv(&[3.0, 1.0, 0.0]), 0).unwrap(),
            LabeledScore::new(sv(&[3.0, 1.0, 0.0]), 1).unwrap(),
        ];
        assert_eq!(empirical_zero_one_risk(&sample).unwrap(), 0.5);

        let tie = vec![LabeledScore::new(sv(&[1.5, 1.5, 1.5]), 0).unwrap()];
        assert_eq!(empirical_zero_one_risk(&tie).unwrap(), 1.0);

        let correct = vec![LabeledScore::new(sv(&[0.0, 0.0, 4.0]), 2).unwrap()];
        assert_eq!(empirical_zero_one_risk(&correct).unwrap(), 0.0);

        assert!(matches!(
            empirical_zero_one_risk(&[]),
            Err(Error::EmptySample)
        ));
    }

    #[test]
    fn rejects_binary_and_nonfinite_input() {
        assert!(matches!(
            ScoreVector::new(vec![1.0, 2.0]),
            Err(Error::TooFewCategories(2))
        ));
        assert!(ScoreVector::new(vec![1.0, f64::NAN, 0.0]).is_err());
        assert!(ScoreVector::new(vec![1.0, f64::INFINITY, 0.0]).is_err());
    }
}
