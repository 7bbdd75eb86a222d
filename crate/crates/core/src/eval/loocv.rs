use rayon::prelude::*;

use super::metrics::report_metrics;
use super::select::{select_hyperparameters, SelectionGrid, SelectionOptions};
use crate::data::{apply_normalizer, fit_normalizer, NormalizationParams};
use crate::error::{Error, Result};
use crate::solvers::{train_lwa_traced, train_nn, train_svm, NnModel};
use crate::types::{Dataset, EvalReport, Hyperparameters, LwaModel, PredictionOutcome, PredictionRecord, SvmModel};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SvmParams {
    pub lambda_w: f64,
    pub iterations: u64,
    pub seed: u64,
}

impl Default for SvmParams {
    fn default() -> Self {
        SvmParams {
            lambda_w: 1e-3,
            iterations: 100_000,
            seed: 0,
        }
    }
}

/// How each fold's model is produced.
#[derive(Debug, Clone, PartialEq)]
pub enum Trainer {
    Lwa(Hyperparameters),
    Svm(SvmParams),
    Nn,
    /// Abstaining classifier whose hyperparameters are re-selected inside
    /// every fold by inner cross-validation (nested evaluation).
    LwaTuned {
        base: Hyperparameters,
        grid: SelectionGrid,
        options: SelectionOptions,
    },
}

impl Trainer {
    fn base_seed(&self) -> u64 {
        match self {
            Trainer::Lwa(h) | Trainer::LwaTuned { base: h, .. } => h.seed,
            Trainer::Svm(p) => p.seed,
            Trainer::Nn => 0,
        }
    }

    /// Trains on `data` with the given seed substituted for the trainer's own.
    pub fn fit(&self, data: &Dataset, seed: u64) -> Result<Fitted> {
        Ok(match self {
            Trainer::Lwa(h) => Fitted::Lwa(train_lwa_traced(data, &h.with_seed(seed), None)?.0),
            Trainer::Svm(p) => Fitted::Svm(train_svm(data, p.lambda_w, p.iterations, seed)?),
            Trainer::Nn => Fitted::Nn(train_nn(data)?),
            Trainer::LwaTuned { base, grid, options } => {
                let base = base.with_seed(seed);
                let selected = select_hyperparameters(data, &base, grid, options)?;
                Fitted::Lwa(train_lwa_traced(data, &selected.hyper, None)?.0)
            }
        })
    }
}

/// A model trained for one fold.
#[derive(Debug, Clone)]
pub enum Fitted {
    Lwa(LwaModel),
    Svm(SvmModel),
    Nn(NnModel),
}

impl Fitted {
    pub fn predict(&self, x: &[f64]) -> Result<PredictionOutcome> {
        match self {
            Fitted::Lwa(m) => m.predict(x),
            Fitted::Svm(m) => m.predict(x),
            Fitted::Nn(m) => m.predict(x),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LoocvOptions {
    /// Refit min-max scaling on each fold's training portion and apply it
    /// to both the training portion and the held-out example.
    pub normalize: bool,
}

/// Leave-one-out cross-validation with default options.
pub fn loocv(data: &Dataset, trainer: &Trainer) -> Result<EvalReport> {
    loocv_with(data, trainer, &LoocvOptions::default())
}

/// Trains on all examples but `i` and predicts example `i`, for every `i`.
/// Fold `i` trains with seed `base_seed + i`, so the report does not depend
/// on how folds are scheduled across threads.
pub fn loocv_with(data: &Dataset, trainer: &Trainer, options: &LoocvOptions) -> Result<EvalReport> {
    if data.len() < 2 {
        return Err(Error::invalid("leave-one-out needs at least two examples"));
    }
    data.require_both_classes()?;
    let base_seed = trainer.base_seed();

    let records = (0..data.len())
        .into_par_iter()
        .map(|i| {
            let held = &data.examples()[i];
            let train = data.without(i)?;
            let (train, norm): (Dataset, Option<NormalizationParams>) = if options.normalize {
                let p = fit_normalizer(&train)?;
                (apply_normalizer(&p, &train)?, Some(p))
            } else {
                (train, None)
            };
            let model = trainer.fit(&train, base_seed.wrapping_add(i as u64))?;
            let outcome = match norm {
                Some(p) => model.predict(&p.apply_values(&held.x)?)?,
                None => model.predict(&held.x)?,
            };
            Ok(PredictionRecord { truth: held.y, outcome })
        })
        .collect::<Result<Vec<_>>>()?;
    report_metrics(&records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Label;

    fn four_points() -> Dataset {
        Dataset::from_pairs(vec![
            (vec![0.0], Label::Negative),
            (vec![0.1], Label::Negative),
            (vec![10.0], Label::Positive),
            (vec![10.1], Label::Positive),
        ])
        .unwrap()
    }

    #[test]
    fn nn_on_hand_checkable_points() {
        let r = loocv(&four_points(), &Trainer::Nn).unwrap();
        assert_eq!(r.accuracy_on_accepted, Some(1.0));
        assert_eq!(r.per_example.len(), 4);
        assert_eq!(r.n_abstained, 0);
    }

    #[test]
    fn one_record_per_example() {
        let ds = four_points();
        let hyper = Hyperparameters::new(0.1, 0.1, 0.3, 200, 1).unwrap();
        let r = loocv(&ds, &Trainer::Lwa(hyper)).unwrap();
        assert_eq!(r.per_example.len(), ds.len());
        for (rec, e) in r.per_example.iter().zip(ds.iter()) {
            assert_eq!(rec.truth, e.y);
        }
    }

    #[test]
    fn nn_ignores_seed() {
        let ds = four_points();
        let a = loocv(&ds, &Trainer::Nn).unwrap();
        let b = loocv_with(&ds, &Trainer::Nn, &LoocvOptions { normalize: true }).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_tiny_or_single_class_data() {
        let one = Dataset::from_pairs(vec![(vec![0.0], Label::Negative)]).unwrap();
        assert!(loocv(&one, &Trainer::Nn).is_err());
        let same = Dataset::from_pairs(vec![(vec![0.0], Label::Negative), (vec![1.0], Label::Negative)]).unwrap();
        assert!(loocv(&same, &Trainer::Nn).is_err());
    }

    #[test]
    fn folds_that_lose_a_class_report_an_error() {
        // holding out the only positive leaves a single-class training set
        let ds = Dataset::from_pairs(vec![
            (vec![0.0], Label::Negative),
            (vec![0.5], Label::Negative),
            (vec![1.0], Label::Positive),
        ])
        .unwrap();
        assert!(loocv(&ds, &Trainer::Svm(SvmParams::default())).is_err());
    }
}
