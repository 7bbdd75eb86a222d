use serde::{Deserialize, Serialize};

use super::IndexSampler;
use crate::error::Result;
use crate::loss::{branch, stochastic_objective_value, Branch};
use crate::types::{Dataset, Hyperparameters, LwaModel};

/// Objective values recorded during training.
///
/// Each sample is `(t, value)` where `value` is the stochastic objective
/// (regularizer plus mean surrogate loss over the training set) of the
/// iterate produced by iteration `t`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrainingTrace {
    pub stride: u64,
    pub objective_samples: Vec<(u64, f64)>,
}

impl TrainingTrace {
    /// Means of the samples falling into consecutive windows of `window`
    /// iterations. Partial trailing windows are included.
    pub fn smoothed(&self, window: u64) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        let mut current = None;
        let (mut sum, mut count) = (0.0, 0usize);
        for &(t, v) in &self.objective_samples {
            let bucket = (t - 1) / window.max(1);
            if current.is_some() && current != Some(bucket) {
                out.push(sum / count as f64);
                sum = 0.0;
                count = 0;
            }
            current = Some(bucket);
            sum += v;
            count += 1;
        }
        if count > 0 {
            out.push(sum / count as f64);
        }
        out
    }
}

/// Trains the abstaining classifier, recording the objective every
/// `max(T / 100, 1)` iterations.
pub fn train_lwa(data: &Dataset, hyper: &Hyperparameters) -> Result<(LwaModel, TrainingTrace)> {
    let stride = (hyper.iterations / 100).max(1);
    train_lwa_traced(data, hyper, Some(stride))
}

/// Stochastic sub-gradient training from the zero model.
///
/// Each of the `T` iterations draws one example uniformly at random and
/// steps against the sub-gradient of its regularized surrogate loss with
/// step sizes `1/(lambda_w t)` for `(w, b)` and `1/(lambda_u t)` for
/// `(u, b_prime)`. The returned model is the iterate after iteration `T`.
/// `trace_stride = None` skips objective bookkeeping entirely.
pub fn train_lwa_traced(
    data: &Dataset,
    hyper: &Hyperparameters,
    trace_stride: Option<u64>,
) -> Result<(LwaModel, TrainingTrace)> {
    hyper.validate()?;
    data.require_both_classes()?;

    let mut model = LwaModel::zeros(data.dim(), *hyper);
    let mut trace = TrainingTrace {
        stride: trace_stride.unwrap_or(0),
        objective_samples: Vec::new(),
    };
    let c = hyper.c;
    let beta = hyper.beta();
    let examples = data.examples();
    let mut sampler = IndexSampler::new(hyper.seed, examples.len());

    for t in 1..=hyper.iterations {
        let ex = &examples[sampler.next_index()];
        let x = ex.x.as_slice();
        let y = ex.y.sign();
        let h = model.h(x);
        let r = model.r(x);

        let tf = t as f64;
        let shrink = 1.0 - 1.0 / tf;
        let eta_w = 1.0 / (hyper.lambda_w * tf);
        let eta_u = 1.0 / (hyper.lambda_u * tf);

        match branch(y, h, r, c, beta) {
            Branch::MarginViolation => {
                let step_w = 0.5 * eta_w * y;
                let step_u = -0.5 * eta_u;
                for ((w, u), xi) in model.w.iter_mut().zip(model.u.iter_mut()).zip(x) {
                    *w = shrink * *w + step_w * xi;
                    *u = shrink * *u + step_u * xi;
                }
                model.b += step_w;
                model.b_prime += step_u;
            }
            Branch::RejectionActive => {
                let step_u = eta_u * c * beta;
                scale(&mut model.w, shrink);
                for (u, xi) in model.u.iter_mut().zip(x) {
                    *u = shrink * *u + step_u * xi;
                }
                model.b_prime += step_u;
            }
            Branch::Neither => {
                scale(&mut model.w, shrink);
                scale(&mut model.u, shrink);
            }
        }

        if let Some(stride) = trace_stride {
            if t % stride.max(1) == 0 || t == hyper.iterations {
                trace
                    .objective_samples
                    .push((t, stochastic_objective_value(data, &model)?));
            }
        }
    }
    Ok((model, trace))
}

#[inline]
fn scale(v: &mut [f64], s: f64) {
    for x in v {
        *x *= s;
    }
}
