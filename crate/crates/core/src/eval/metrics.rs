use crate::error::{Error, Result};
use crate::types::{EvalReport, Label, PredictionRecord};

/// Average 1-based ranks of `values`; tied values share the mean of the
/// ranks they span.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i + 1;
        while j < order.len() && values[order[j]] == values[order[i]] {
            j += 1;
        }
        // positions i..j hold ranks i+1..=j
        let rank = (i + 1 + j) as f64 / 2.0;
        for &k in &order[i..j] {
            ranks[k] = rank;
        }
        i = j;
    }
    ranks
}

/// Area under the ROC curve via the Mann-Whitney statistic, with ties
/// counted as half a win. `None` when only one class is present.
pub fn auc_roc(scores: &[(Label, f64)]) -> Option<f64> {
    let n_pos = scores.iter().filter(|(y, _)| *y == Label::Positive).count();
    let n_neg = scores.len() - n_pos;
    if n_pos == 0 || n_neg == 0 {
        return None;
    }
    let values: Vec<f64> = scores.iter().map(|(_, s)| *s).collect();
    let ranks = average_ranks(&values);
    let pos_rank_sum: f64 = scores
        .iter()
        .zip(&ranks)
        .filter(|((y, _), _)| *y == Label::Positive)
        .map(|(_, r)| r)
        .sum();
    let (p, n) = (n_pos as f64, n_neg as f64);
    Some((pos_rank_sum - p * (p + 1.0) / 2.0) / (p * n))
}

/// Aggregates held-out predictions into the headline metrics.
///
/// Accuracy and AUC are computed over accepted records only (AUC from the
/// discriminant scores); rejected records count toward `n_abstained` and
/// as errors in `overall_accuracy_counting_rejects_as_errors`.
pub fn report_metrics(records: &[PredictionRecord]) -> Result<EvalReport> {
    if records.is_empty() {
        return Err(Error::invalid("cannot report metrics on zero predictions"));
    }
    let mut n_correct = 0usize;
    let mut n_misclassified = 0usize;
    let mut n_abstained = 0usize;
    let mut accepted_scores = Vec::with_capacity(records.len());
    for rec in records {
        match rec.outcome.label() {
            None => n_abstained += 1,
            Some(label) => {
                if label == rec.truth {
                    n_correct += 1;
                } else {
                    n_misclassified += 1;
                }
                accepted_scores.push((rec.truth, rec.outcome.h_score()));
            }
        }
    }
    let n = records.len() as f64;
    let n_accepted = n_correct + n_misclassified;
    Ok(EvalReport {
        per_example: records.to_vec(),
        accuracy_on_accepted: (n_accepted > 0).then(|| n_correct as f64 / n_accepted as f64),
        overall_accuracy_counting_rejects_as_errors: n_correct as f64 / n,
        auc_roc: auc_roc(&accepted_scores),
        n_misclassified,
        n_abstained,
        abstention_fraction: n_abstained as f64 / n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::PredictionOutcome;
    use proptest::prelude::*;

    const POS: Label = Label::Positive;
    const NEG: Label = Label::Negative;

    /// Fraction of (positive, negative) pairs ordered correctly, ties half.
    fn pairwise_auc(scores: &[(Label, f64)]) -> f64 {
        let (mut wins, mut pairs) = (0.0, 0.0);
        for (yp, sp) in scores.iter().filter(|s| s.0 == POS) {
            let _ = yp;
            for (_, sn) in scores.iter().filter(|s| s.0 == NEG) {
                pairs += 1.0;
                if sp > sn {
                    wins += 1.0;
                } else if sp == sn {
                    wins += 0.5;
                }
            }
        }
        wins / pairs
    }

    #[test]
    fn auc_examples() {
        assert_eq!(auc_roc(&[(POS, 0.9), (POS, 0.7), (NEG, 0.2), (NEG, -1.0)]), Some(1.0));
        assert_eq!(auc_roc(&[(POS, 0.3), (NEG, 0.3), (POS, 0.3), (NEG, 0.3)]), Some(0.5));
        let s = [(POS, 0.9), (NEG, 0.8), (POS, 0.3), (NEG, 0.1)];
        assert_eq!(pairwise_auc(&s), 0.75);
        assert_eq!(auc_roc(&s), Some(0.75));
        assert_eq!(auc_roc(&[(POS, 1.0), (POS, 2.0)]), None);
        assert_eq!(auc_roc(&[]), None);
    }

    #[test]
    fn ranks_average_ties() {
        assert_eq!(average_ranks(&[3.0, 1.0, 3.0, 2.0]), vec![3.5, 1.0, 3.5, 2.0]);
    }

    fn acc(truth: Label, label: Label) -> PredictionRecord {
        PredictionRecord {
            truth,
            outcome: PredictionOutcome::Accepted {
                label,
                h_score: label.sign(),
                r_score: Some(1.0),
            },
        }
    }

    fn rej(truth: Label) -> PredictionRecord {
        PredictionRecord {
            truth,
            outcome: PredictionOutcome::Rejected {
                h_score: 0.1,
                r_score: -1.0,
            },
        }
    }

    #[test]
    fn report_all_rejected() {
        let recs = vec![rej(POS), rej(NEG), rej(POS)];
        let r = report_metrics(&recs).unwrap();
        assert_eq!(r.n_abstained, 3);
        assert_eq!(r.accuracy_on_accepted, None);
        assert_eq!(r.auc_roc, None);
        assert_eq!(r.abstention_fraction, 1.0);
        assert_eq!(r.overall_accuracy_counting_rejects_as_errors, 0.0);
    }

    #[test]
    fn report_all_correct() {
        let recs = vec![acc(POS, POS), acc(NEG, NEG), acc(POS, POS)];
        let r = report_metrics(&recs).unwrap();
        assert_eq!(r.accuracy_on_accepted, Some(1.0));
        assert_eq!(r.n_misclassified, 0);
        assert_eq!(r.auc_roc, Some(1.0));
    }

    #[test]
    fn report_mixed() {
        let mut recs = Vec::new();
        recs.extend((0..4).map(|_| acc(POS, POS)));
        recs.extend((0..3).map(|_| acc(NEG, NEG)));
        recs.push(acc(NEG, POS));
        recs.push(rej(POS));
        recs.push(rej(NEG));
        let r = report_metrics(&recs).unwrap();
        assert_eq!(r.accuracy_on_accepted, Some(7.0 / 8.0));
        assert_eq!(r.abstention_fraction, 0.2);
        assert_eq!(r.n_misclassified, 1);
        assert_eq!(r.n_abstained, 2);
        assert_eq!(r.overall_accuracy_counting_rejects_as_errors, 0.7);
        assert_eq!(r.n_accepted() + r.n_abstained, r.n_total());
        assert!(report_metrics(&[]).is_err());
    }

    fn scored() -> impl Strategy<Value = Vec<(Label, f64)>> {
        prop::collection::vec((prop_oneof![Just(POS), Just(NEG)], -100.0..100.0f64), 2..60)
            .prop_filter("both classes", |v| {
                v.iter().any(|s| s.0 == POS) && v.iter().any(|s| s.0 == NEG)
            })
    }

    proptest! {
        #[test]
        fn auc_matches_pairwise_count(s in scored()) {
            prop_assert!((auc_roc(&s).unwrap() - pairwise_auc(&s)).abs() < 1e-12);
        }

        #[test]
        fn auc_invariant_under_monotone_maps(s in scored(), a in 0.01..10.0f64, b in -5.0..5.0f64) {
            let mapped: Vec<_> = s.iter().map(|(y, v)| (*y, (a * v / 100.0 + b).exp())).collect();
            prop_assert!((auc_roc(&s).unwrap() - auc_roc(&mapped).unwrap()).abs() < 1e-12);
        }

        #[test]
        fn auc_symmetric_under_label_flip_and_negation(s in scored()) {
            let flipped: Vec<_> = s.iter().map(|(y, v)| (y.flipped(), -v)).collect();
            prop_assert!((auc_roc(&s).unwrap() - auc_roc(&flipped).unwrap()).abs() < 1e-12);
        }
    }
}
