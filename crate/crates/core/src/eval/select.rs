use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::metrics::report_metrics;
use crate::error::{Error, Result};
use crate::solvers::train_lwa_traced;
use crate::types::{validate_cost, Dataset, Hyperparameters, Label, PredictionRecord};

#[derive(Debug, Clone, PartialEq)]
pub struct SelectionGrid {
    pub lambda_w: Vec<f64>,
    pub lambda_u: Vec<f64>,
    pub c: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SelectionOptions {
    pub folds: usize,
    /// Largest admissible abstention fraction.
    pub max_abstention: f64,
}

impl Default for SelectionOptions {
    fn default() -> Self {
        SelectionOptions {
            folds: 5,
            max_abstention: 0.25,
        }
    }
}

/// Cross-validated performance of one grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate {
    pub hyper: Hyperparameters,
    pub accuracy_on_accepted: Option<f64>,
    pub abstention_fraction: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Selection {
    pub hyper: Hyperparameters,
    /// True when no grid point met the abstention cap; `hyper` is then the
    /// point with the smallest abstention fraction.
    pub infeasible: bool,
    /// Every evaluated grid point in `lambda_w`, `lambda_u`, `c` nesting
    /// order. Empty when the grid holds a single point.
    pub candidates: Vec<Candidate>,
}

/// Stratified fold assignment: each class is shuffled with `seed` and dealt
/// round-robin into `k` folds.
pub fn stratified_folds(data: &Dataset, k: usize, seed: u64) -> Vec<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut folds = vec![Vec::new(); k];
    let mut offset = 0;
    for label in [Label::Negative, Label::Positive] {
        let mut idx: Vec<usize> = (0..data.len()).filter(|&i| data.examples()[i].y == label).collect();
        idx.shuffle(&mut rng);
        let n = idx.len();
        for (j, i) in idx.into_iter().enumerate() {
            folds[(offset + j) % k].push(i);
        }
        // the next class continues dealing where this one stopped
        offset += n;
    }
    for f in folds.iter_mut() {
        f.sort_unstable();
    }
    folds
}

/// Picks `(lambda_w, lambda_u, c)` by inner k-fold stratified
/// cross-validation: the highest accuracy on accepted examples among grid
/// points whose abstention fraction is within the cap, ties going to the
/// larger `c`. Iterations and seed come from `base`; fold `f` trains with
/// seed `base.seed + f`.
pub fn select_hyperparameters(
    data: &Dataset,
    base: &Hyperparameters,
    grid: &SelectionGrid,
    options: &SelectionOptions,
) -> Result<Selection> {
    if grid.lambda_w.is_empty() || grid.lambda_u.is_empty() || grid.c.is_empty() {
        return Err(Error::invalid("hyperparameter grids must be non-empty"));
    }
    grid.c.iter().try_for_each(|&c| validate_cost(c))?;
    let mut points = Vec::new();
    for &lw in &grid.lambda_w {
        for &lu in &grid.lambda_u {
            for &c in &grid.c {
                let h = base.with_lambdas(lw, lu).with_c(c);
                h.validate()?;
                points.push(h);
            }
        }
    }
    if points.len() == 1 {
        return Ok(Selection {
            hyper: points[0],
            infeasible: false,
            candidates: Vec::new(),
        });
    }
    if options.folds < 2 {
        return Err(Error::invalid("selection needs at least 2 folds"));
    }
    let (neg, pos) = data.class_counts();
    if neg < options.folds || pos < options.folds {
        return Err(Error::invalid(format!(
            "stratified {}-fold selection needs at least {} examples per class, got {neg} / {pos}",
            options.folds, options.folds
        )));
    }

    let folds = stratified_folds(data, options.folds, base.seed);
    let splits = folds
        .iter()
        .map(|test| {
            let train: Vec<usize> = (0..data.len()).filter(|i| test.binary_search(i).is_err()).collect();
            Ok((data.subset(&train)?, test.clone()))
        })
        .collect::<Result<Vec<_>>>()?;

    let candidates = points
        .par_iter()
        .map(|h| {
            let mut records = Vec::with_capacity(data.len());
            for (f, (train, test)) in splits.iter().enumerate() {
                let hf = h.with_seed(base.seed.wrapping_add(f as u64));
                let (model, _) = train_lwa_traced(train, &hf, None)?;
                for &i in test {
                    let e = &data.examples()[i];
                    records.push(PredictionRecord {
                        truth: e.y,
                        outcome: model.predict(&e.x)?,
                    });
                }
            }
            let report = report_metrics(&records)?;
            Ok(Candidate {
                hyper: *h,
                accuracy_on_accepted: report.accuracy_on_accepted,
                abstention_fraction: report.abstention_fraction,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let feasible = candidates
        .iter()
        .filter(|c| c.abstention_fraction <= options.max_abstention && c.accuracy_on_accepted.is_some());
    let mut best: Option<&Candidate> = None;
    for cand in feasible {
        let better = match best {
            None => true,
            Some(b) => {
                let (ca, ba) = (cand.accuracy_on_accepted.unwrap(), b.accuracy_on_accepted.unwrap());
                ca > ba || (ca == ba && cand.hyper.c > b.hyper.c)
            }
        };
        if better {
            best = Some(cand);
        }
    }
    let (hyper, infeasible) = match best {
        Some(b) => (b.hyper, false),
        None => {
            let least = candidates
                .iter()
                .reduce(|a, b| {
                    if b.abstention_fraction < a.abstention_fraction {
                        b
                    } else {
                        a
                    }
                })
                .expect("grid is non-empty");
            (least.hyper, true)
        }
    };
    Ok(Selection {
        hyper,
        infeasible,
        candidates,
    })
}
