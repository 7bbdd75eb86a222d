//! Domain types shared by the losses, solvers and evaluation harness.
//!
//! Everything here is immutable once built and validated at construction, so
//! the rest of the crate can work on plain slices without re-checking
//! finiteness or label domains.

use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A fixed-length vector of finite feature values. The feature map is the
/// identity: the classifiers operate on these values directly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct FeatureVector(Vec<f64>);

impl FeatureVector {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("feature vector must have at least one entry"));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("feature {} is not finite ({})", i, values[i])));
        }
        Ok(FeatureVector(values))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for FeatureVector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for FeatureVector {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        FeatureVector::new(values)
    }
}

impl From<FeatureVector> for Vec<f64> {
    fn from(v: FeatureVector) -> Self {
        v.0
    }
}

/// Binary class label: `Negative` (-1, normal) or `Positive` (+1, abnormal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Label {
    Negative,
    Positive,
}

impl Label {
    /// The label as a signed real, -1.0 or +1.0.
    #[inline]
    pub fn sign(self) -> f64 {
        match self {
            Label::Negative => -1.0,
            Label::Positive => 1.0,
        }
    }

    /// Label predicted by a discriminant score. A score of exactly zero maps
    /// to `Positive`.
    #[inline]
    pub fn from_score(score: f64) -> Label {
        if score >= 0.0 {
            Label::Positive
        } else {
            Label::Negative
        }
    }

    pub fn flipped(self) -> Label {
        match self {
            Label::Negative => Label::Positive,
            Label::Positive => Label::Negative,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Label::Negative => -1,
            Label::Positive => 1,
        }
    }
}

impl TryFrom<i8> for Label {
    type Error = Error;

    fn try_from(v: i8) -> Result<Self> {
        match v {
            -1 => Ok(Label::Negative),
            1 => Ok(Label::Positive),
            other => Err(Error::invalid(format!("label must be -1 or +1, got {other}"))),
        }
    }
}

impl From<Label> for i8 {
    fn from(l: Label) -> i8 {
        l.as_i8()
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Negative => f.write_str("-1"),
            Label::Positive => f.write_str("+1"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabeledExample {
    pub x: FeatureVector,
    pub y: Label,
}

impl LabeledExample {
    pub fn new(x: FeatureVector, y: Label) -> Self {
        LabeledExample { x, y }
    }

    /// Convenience constructor from raw values.
    pub fn from_values(values: Vec<f64>, y: Label) -> Result<Self> {
        Ok(LabeledExample {
            x: FeatureVector::new(values)?,
            y,
        })
    }
}

/// An ordered, non-empty collection of examples sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    examples: Vec<LabeledExample>,
    dim: usize,
}

impl Dataset {
    pub fn new(examples: Vec<LabeledExample>) -> Result<Self> {
        let dim = match examples.first() {
            Some(e) => e.x.len(),
            None => return Err(Error::invalid("dataset is empty")),
        };
        for (i, e) in examples.iter().enumerate() {
            if e.x.len() != dim {
                return Err(Error::invalid(format!(
                    "example {} has {} features, expected {}",
                    i,
                    e.x.len(),
                    dim
                )));
            }
        }
        Ok(Dataset { examples, dim })
    }

    /// Builds a dataset from `(features, label)` pairs.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<f64>, Label)>,
    {
        let examples = pairs
            .into_iter()
            .map(|(x, y)| LabeledExample::from_values(x, y))
            .collect::<Result<Vec<_>>>()?;
        Dataset::new(examples)
    }

    pub fn examples(&self) -> &[LabeledExample] {
        &self.examples
    }

    pub fn into_examples(self) -> Vec<LabeledExample> {
        self.examples
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, LabeledExample> {
        self.examples.iter()
    }

    /// Number of (negative, positive) examples.
    pub fn class_counts(&self) -> (usize, usize) {
        let pos = self.examples.iter().filter(|e| e.y == Label::Positive).count();
        (self.examples.len() - pos, pos)
    }

    /// Fails unless both labels are present.
    pub fn require_both_classes(&self) -> Result<()> {
        match self.class_counts() {
            (0, _) => Err(Error::invalid("dataset has no negative (-1) examples")),
            (_, 0) => Err(Error::invalid("dataset has no positive (+1) examples")),
            _ => Ok(()),
        }
    }

    /// All examples except the one at `held_out`.
    pub fn without(&self, held_out: usize) -> Result<Dataset> {
        let examples: Vec<_> = self
            .examples
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != held_out)
            .map(|(_, e)| e.clone())
            .collect();
        Dataset::new(examples)
    }

    /// The examples at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Dataset> {
        Dataset::new(indices.iter().map(|&i| self.examples[i].clone()).collect())
    }

    /// This dataset followed by `other`.
    pub fn concat(&self, other: &Dataset) -> Result<Dataset> {
        let mut examples = self.examples.clone();
        examples.extend(other.examples.iter().cloned());
        Dataset::new(examples)
    }
}

impl<'a> IntoIterator for &'a Dataset {
    type Item = &'a LabeledExample;
    type IntoIter = std::slice::Iter<'a, LabeledExample>;

    fn into_iter(self) -> Self::IntoIter {
        self.examples.iter()
    }
}

/// Training settings for the abstaining classifier.
///
/// `c` is the cost charged per abstention and must lie strictly inside
/// (0, 0.5); the surrogate slope `beta = 1 / (1 - 2c)` is derived from it on
/// demand.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Hyperparameters {
    pub lambda_w: f64,
    pub lambda_u: f64,
    pub c: f64,
    pub iterations: u64,
    pub seed: u64,
}

impl Default for Hyperparameters {
    fn default() -> Self {
        Hyperparameters {
            lambda_w: 1e-3,
            lambda_u: 1e-3,
            c: 0.45,
            iterations: 100_000,
            seed: 0,
        }
    }
}

impl Hyperparameters {
    pub fn new(lambda_w: f64, lambda_u: f64, c: f64, iterations: u64, seed: u64) -> Result<Self> {
        let h = Hyperparameters {
            lambda_w,
            lambda_u,
            c,
            iterations,
            seed,
        };
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        validate_cost(self.c)?;
        validate_lambda("lambda_w", self.lambda_w)?;
        validate_lambda("lambda_u", self.lambda_u)?;
        if self.iterations == 0 {
            return Err(Error::invalid("iterations must be at least 1"));
        }
        Ok(())
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        beta(self.c)
    }

    pub fn with_c(mut self, c: f64) -> Self {
        self.c = c;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_lambdas(mut self, lambda_w: f64, lambda_u: f64) -> Self {
        self.lambda_w = lambda_w;
        self.lambda_u = lambda_u;
        self
    }

    pub fn with_iterations(mut self, iterations: u64) -> Self {
        self.iterations = iterations;
        self
    }
}

#[inline]
pub fn beta(c: f64) -> f64 {
    1.0 / (1.0 - 2.0 * c)
}

/// Checks that an abstention cost lies in the open interval (0, 0.5).
pub fn validate_cost(c: f64) -> Result<()> {
    if c.is_finite() && c > 0.0 && c < 0.5 {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "abstention cost c must lie in the open interval (0, 0.5), got {c}"
        )))
    }
}

pub(crate) fn validate_lambda(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive, got {v}")))
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_finite(name: &str, values: &[f64]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::invalid(format!("{name}[{i}] is not finite"))),
        None => Ok(()),
    }
}

/// Abstaining linear classifier: discriminant `h(x) = w.x + b` and rejection
/// function `r(x) = u.x + b_prime`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LwaModel {
    pub w: Vec<f64>,
    pub u: Vec<f64>,
    pub b: f64,
    pub b_prime: f64,
    pub hyper: Hyperparameters,
}

impl LwaModel {
    pub fn new(w: Vec<f64>, u: Vec<f64>, b: f64, b_prime: f64, hyper: Hyperparameters) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::invalid("weight vector w is empty"));
        }
        if w.len() != u.len() {
            return Err(Error::invalid(format!(
                "w has length {} but u has length {}",
                w.len(),
                u.len()
            )));
        }
        check_finite("w", &w)?;
        check_finite("u", &u)?;
        if !b.is_finite() || !b_prime.is_finite() {
            return Err(Error::invalid("biases must be finite"));
        }
        Ok(LwaModel {
            w,
            u,
            b,
            b_prime,
            hyper,
        })
    }

    /// The all-zero starting point of training.
    pub fn zeros(dim: usize, hyper: Hyperparameters) -> Self {
        LwaModel {
            w: vec![0.0; dim],
            u: vec![0.0; dim],
            b: 0.0,
            b_prime: 0.0,
            hyper,
        }
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn score_h(&self, x: &[f64]) -> Result<f64> {
        Error::check_dim(self.dim(), x.len())?;
        Ok(self.h(x))
    }

    pub fn score_r(&self, x: &[f64]) -> Result<f64> {
        Error::check_dim(self.dim(), x.len())?;
        Ok(self.r(x))
    }

    /// Rejects when `r(x) < 0`; otherwise labels by the sign of `h(x)`.
    /// `r(x) == 0` is accepted.
    pub fn predict(&self, x: &[f64]) -> Result<PredictionOutcome> {
        Error::check_dim(self.dim(), x.len())?;
        Ok(PredictionOutcome::from_scores(self.h(x), self.r(x)))
    }

    #[inline]
    pub(crate) fn h(&self, x: &[f64]) -> f64 {
        dot(&self.w, x) + self.b
    }

    #[inline]
    pub(crate) fn r(&self, x: &[f64]) -> f64 {
        dot(&self.u, x) + self.b_prime
    }
}

/// Linear SVM trained with the hinge loss.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvmModel {
    pub w: Vec<f64>,
    pub b: f64,
    pub lambda_w: f64,
    pub iterations: u64,
    pub seed: u64,
}

impl SvmModel {
    pub fn new(w: Vec<f64>, b: f64, lambda_w: f64, iterations: u64, seed: u64) -> Result<Self> {
        if w.is_empty() {
            return Err(Error::invalid("weight vector w is empty"));
        }
        check_finite("w", &w)?;
        if !b.is_finite() {
            return Err(Error::invalid("bias must be finite"));
        }
        Ok(SvmModel {
            w,
            b,
            lambda_w,
            iterations,
            seed,
        })
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    pub fn score_h(&self, x: &[f64]) -> Result<f64> {
        Error::check_dim(self.dim(), x.len())?;
        Ok(self.h(x))
    }

    /// SVMs never abstain.
    pub fn predict(&self, x: &[f64]) -> Result<PredictionOutcome> {
        let h = self.score_h(x)?;
        Ok(PredictionOutcome::Accepted {
            label: Label::from_score(h),
            h_score: h,
            r_score: None,
        })
    }

    #[inline]
    pub(crate) fn h(&self, x: &[f64]) -> f64 {
        dot(&self.w, x) + self.b
    }
}

/// What a classifier said about one example.
///
/// `r_score` is `None` on accepted predictions of models without a rejection
/// function (SVM, nearest neighbor).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum PredictionOutcome {
    Accepted {
        label: Label,
        h_score: f64,
        r_score: Option<f64>,
    },
    Rejected {
        h_score: f64,
        r_score: f64,
    },
}

impl PredictionOutcome {
    pub fn from_scores(h: f64, r: f64) -> Self {
        if r < 0.0 {
            PredictionOutcome::Rejected { h_score: h, r_score: r }
        } else {
            PredictionOutcome::Accepted {
                label: Label::from_score(h),
                h_score: h,
                r_score: Some(r),
            }
        }
    }

    pub fn label(&self) -> Option<Label> {
        match self {
            PredictionOutcome::Accepted { label, .. } => Some(*label),
            PredictionOutcome::Rejected { .. } => None,
        }
    }

    pub fn is_rejected(&self) -> bool {
        matches!(self, PredictionOutcome::Rejected { .. })
    }

    pub fn h_score(&self) -> f64 {
        match self {
            PredictionOutcome::Accepted { h_score, .. } | PredictionOutcome::Rejected { h_score, .. } => *h_score,
        }
    }

    pub fn r_score(&self) -> Option<f64> {
        match self {
            PredictionOutcome::Accepted { r_score, .. } => *r_score,
            PredictionOutcome::Rejected { r_score, .. } => Some(*r_score),
        }
    }
}

/// One held-out prediction: the true label and what the model said.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PredictionRecord {
    pub truth: Label,
    #[serde(flatten)]
    pub outcome: PredictionOutcome,
}

/// Aggregate metrics over a list of predictions.
///
/// `None` marks an undefined metric: accuracy with nothing accepted, or AUC
/// with a single class among the accepted examples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub per_example: Vec<PredictionRecord>,
    pub accuracy_on_accepted: Option<f64>,
    pub overall_accuracy_counting_rejects_as_errors: f64,
    pub auc_roc: Option<f64>,
    pub n_misclassified: usize,
    pub n_abstained: usize,
    pub abstention_fraction: f64,
}

impl EvalReport {
    pub fn n_total(&self) -> usize {
        self.per_example.len()
    }

    pub fn n_accepted(&self) -> usize {
        self.per_example.len() - self.n_abstained
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyper() -> Hyperparameters {
        Hyperparameters::default()
    }

    fn lwa(w: Vec<f64>, u: Vec<f64>, b: f64, bp: f64) -> LwaModel {
        LwaModel::new(w, u, b, bp, hyper()).unwrap()
    }

    #[test]
    fn score_h_examples() {
        let zero = LwaModel::zeros(3, hyper());
        assert_eq!(zero.score_h(&[1.0, -2.0, 7.5]).unwrap(), 0.0);

        let m = lwa(vec![1.0, 2.0], vec![0.0, 0.0], 0.5, 0.0);
        assert_eq!(m.score_h(&[1.0, 1.0]).unwrap(), 3.5);

        let e1 = lwa(vec![1.0, 0.0, 0.0], vec![0.0; 3], 0.0, 0.0);
        assert_eq!(e1.score_h(&[-4.25, 9.0, 3.0]).unwrap(), -4.25);

        let svm = SvmModel::new(vec![1.0, 2.0], 0.5, 1.0, 1, 0).unwrap();
        assert_eq!(svm.score_h(&[1.0, 1.0]).unwrap(), 3.5);
    }

    #[test]
    fn score_r_examples() {
        let zero = LwaModel::zeros(2, hyper());
        assert_eq!(zero.score_r(&[3.0, 4.0]).unwrap(), 0.0);

        let m = lwa(vec![0.0, 0.0], vec![-1.0, 0.0], 0.0, 1.0);
        assert_eq!(m.score_r(&[2.0, 5.0]).unwrap(), -1.0);

        let m = lwa(vec![0.0, 0.0], vec![0.0, 0.0], 0.0, -0.3);
        for x in [[0.0, 0.0], [100.0, -3.0], [1e-9, 5.0]] {
            assert_eq!(m.score_r(&x).unwrap(), -0.3);
        }
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let m = LwaModel::zeros(2, hyper());
        assert!(matches!(
            m.score_h(&[1.0]),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
        assert!(m.score_r(&[1.0, 2.0, 3.0]).is_err());
        assert!(m.predict(&[1.0]).is_err());
        let svm = SvmModel::new(vec![1.0], 0.0, 1.0, 1, 0).unwrap();
        assert!(svm.score_h(&[1.0, 2.0]).is_err());
    }

    #[test]
    fn predict_examples() {
        // constant scores via biases: h = b, r = b'
        let m = lwa(vec![0.0], vec![0.0], 2.0, 0.5);
        assert_eq!(m.predict(&[1.0]).unwrap().label(), Some(Label::Positive));

        let m = lwa(vec![0.0], vec![0.0], 2.0, -0.1);
        assert!(m.predict(&[1.0]).unwrap().is_rejected());

        // r == 0 is accepted
        let m = lwa(vec![0.0], vec![0.0], -0.7, 0.0);
        let out = m.predict(&[1.0]).unwrap();
        assert_eq!(out.label(), Some(Label::Negative));
        assert_eq!(out.h_score(), -0.7);
        assert_eq!(out.r_score(), Some(0.0));

        // h == 0 on an accepted example is labeled positive
        let m = lwa(vec![0.0], vec![0.0], 0.0, 1.0);
        assert_eq!(m.predict(&[1.0]).unwrap().label(), Some(Label::Positive));
    }

    #[test]
    fn hyperparameter_validation() {
        assert!(Hyperparameters::new(1e-3, 1e-3, 0.25, 10, 0).is_ok());
        for c in [0.0, 0.5, -0.1, 0.6, f64::NAN] {
            assert!(Hyperparameters::new(1e-3, 1e-3, c, 10, 0).is_err(), "c = {c}");
        }
        assert!(Hyperparameters::new(0.0, 1e-3, 0.25, 10, 0).is_err());
        assert!(Hyperparameters::new(1e-3, -1.0, 0.25, 10, 0).is_err());
        assert!(Hyperparameters::new(1e-3, 1e-3, 0.25, 0, 0).is_err());
        assert_eq!(beta(0.25), 2.0);
    }

    #[test]
    fn feature_vectors_reject_non_finite() {
        assert!(FeatureVector::new(vec![1.0, f64::NAN]).is_err());
        assert!(FeatureVector::new(vec![f64::INFINITY]).is_err());
        assert!(FeatureVector::new(vec![]).is_err());
    }

    #[test]
    fn dataset_requires_uniform_dim() {
        let err = Dataset::from_pairs(vec![(vec![0.0, 1.0], Label::Negative), (vec![0.0], Label::Positive)]);
        assert!(err.is_err());
        let ds = Dataset::from_pairs(vec![(vec![0.0, 1.0], Label::Negative)]).unwrap();
        assert_eq!(ds.dim(), 2);
        assert!(ds.require_both_classes().is_err());
    }

    #[test]
    fn label_serializes_as_signed_integer() {
        assert_eq!(serde_json::to_string(&Label::Negative).unwrap(), "-1");
        assert_eq!(serde_json::from_str::<Label>("1").unwrap(), Label::Positive);
        assert!(serde_json::from_str::<Label>("0").is_err());
    }
}
