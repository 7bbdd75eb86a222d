use serde::{Deserialize, Serialize};

use super::loocv::{loocv_with, LoocvOptions, Trainer};
use super::metrics::average_ranks;
use crate::error::{Error, Result};
use crate::types::{validate_cost, Dataset, EvalReport, Hyperparameters};

/// LOOCV summary of the abstaining classifier at one abstention cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub c: f64,
    pub auc_roc: Option<f64>,
    pub abstention_fraction: f64,
    pub accuracy_on_accepted: Option<f64>,
    pub n_misclassified: usize,
    pub n_abstained: usize,
}

impl SweepPoint {
    pub fn from_report(c: f64, r: &EvalReport) -> Self {
        SweepPoint {
            c,
            auc_roc: r.auc_roc,
            abstention_fraction: r.abstention_fraction,
            accuracy_on_accepted: r.accuracy_on_accepted,
            n_misclassified: r.n_misclassified,
            n_abstained: r.n_abstained,
        }
    }
}

pub fn sweep_c(data: &Dataset, hyper_base: &Hyperparameters, c_grid: &[f64]) -> Result<Vec<SweepPoint>> {
    sweep_c_with(data, hyper_base, c_grid, &LoocvOptions::default())
}

/// Runs LOOCV of the abstaining classifier at every `c` in `c_grid`, all
/// other hyperparameters fixed. Points come back in grid order.
pub fn sweep_c_with(
    data: &Dataset,
    hyper_base: &Hyperparameters,
    c_grid: &[f64],
    options: &LoocvOptions,
) -> Result<Vec<SweepPoint>> {
    if c_grid.is_empty() {
        return Err(Error::invalid("c grid is empty"));
    }
    c_grid.iter().try_for_each(|&c| validate_cost(c))?;
    c_grid
        .iter()
        .map(|&c| {
            let hyper = hyper_base.with_c(c);
            hyper.validate()?;
            let report = loocv_with(data, &Trainer::Lwa(hyper), options)?;
            Ok(SweepPoint::from_report(c, &report))
        })
        .collect()
}

/// Expands `start:stop:step` into `start, start + step, ..., stop`
/// (inclusive when `stop` lies on the lattice, up to 1e-9 slack). Values are
/// rounded to 12 decimals so `0.1:0.45:0.05` yields `0.15`, not
/// `0.15000000000000002`.
pub fn expand_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(Error::invalid(format!(
            "grid {start}:{stop}:{step} needs finite values, step > 0 and stop >= start"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n)
        .map(|i| ((start + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

/// Spearman rank correlation with average ranks for ties. `None` when
/// either side is constant or the lengths differ.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let (rx, ry) = (average_ranks(xs), average_ranks(ys));
    let n = rx.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        None
    } else {
        Some(sxy / (sxx * syy).sqrt())
    }
}
