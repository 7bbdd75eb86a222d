//! Exhaustive grid minimizer of the abstention objective. Desk-scale only:
//! it exists to check the stochastic solver on tiny problems.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::loss::objective_value;
use crate::types::{dot, Dataset, Hyperparameters, LwaModel};

/// Box and resolution of the search. Every coordinate of `(w, b)` and
/// `(u, b_prime)` takes values `lo, lo + step, ..., hi`; with `refine` the
/// coarse argmin is searched again within one coarse step at `step / 10`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleGrid {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    pub refine: bool,
}

impl Default for OracleGrid {
    fn default() -> Self {
        OracleGrid {
            lo: -3.0,
            hi: 3.0,
            step: 0.25,
            refine: true,
        }
    }
}

/// Grid argmin of `objective_value` over `(w, u, b, b_prime)` for datasets
/// of dimension at most 2.
pub fn oracle_minimize_lwa(data: &Dataset, hyper: &Hyperparameters, grid: &OracleGrid) -> Result<LwaModel> {
    hyper.validate()?;
    if data.dim() > 2 {
        return Err(Error::Unsupported(format!(
            "grid oracle supports dimension <= 2, got {}",
            data.dim()
        )));
    }
    if !(grid.step > 0.0 && grid.hi >= grid.lo && grid.lo.is_finite() && grid.hi.is_finite()) {
        return Err(Error::invalid("oracle grid needs lo <= hi and a positive step"));
    }

    let n_coords = data.dim() + 1;
    let coarse = axis(grid.lo, grid.hi, grid.step);
    let axes = vec![coarse; n_coords];
    let (mut wh, mut ur) = search(data, hyper, &axes, &axes);

    if grid.refine {
        let fine = grid.step / 10.0;
        let around = |center: &[f64]| -> Vec<Vec<f64>> {
            center
                .iter()
                .map(|&c| axis(c - grid.step, c + grid.step, fine))
                .collect()
        };
        let (fw, fu) = search(data, hyper, &around(&wh), &around(&ur));
        wh = fw;
        ur = fu;
    }

    let d = data.dim();
    let model = LwaModel::new(wh[..d].to_vec(), ur[..d].to_vec(), wh[d], ur[d], *hyper)?;
    debug_assert!(objective_value(data, &model).is_ok());
    Ok(model)
}

fn axis(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step).round() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

/// Every point of the cartesian product of `axes`.
fn product(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut out = vec![Vec::new()];
    for a in axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                a.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

struct Candidate {
    params: Vec<f64>,
    scores: Vec<f64>,
    reg: f64,
}

fn candidates(data: &Dataset, axes: &[Vec<f64>], lambda: f64) -> Vec<Candidate> {
    let d = data.dim();
    product(axes)
        .into_iter()
        .map(|params| {
            let (weights, bias) = (&params[..d], params[d]);
            let scores = data.iter().map(|e| dot(weights, &e.x) + bias).collect();
            let reg = 0.5 * lambda * dot(weights, weights);
            Candidate { params, scores, reg }
        })
        .collect()
}

/// Returns the best `(w..., b)` and `(u..., b_prime)` parameter tuples.
fn search(data: &Dataset, hyper: &Hyperparameters, h_axes: &[Vec<f64>], r_axes: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let hs = candidates(data, h_axes, hyper.lambda_w);
    let rs = candidates(data, r_axes, hyper.lambda_u);
    let ys: Vec<f64> = data.iter().map(|e| e.y.sign()).collect();
    let c = hyper.c;
    let beta = hyper.beta();

    let (value, hi, ri) = hs
        .par_iter()
        .enumerate()
        .map(|(hi, h)| {
            let mut best = (f64::INFINITY, hi, 0usize);
            for (ri, r) in rs.iter().enumerate() {
                let mut total = h.reg + r.reg;
                if total >= best.0 {
                    continue;
                }
                for ((&y, &hv), &rv) in ys.iter().zip(&h.scores).zip(&r.scores) {
                    total += crate::loss::surrogate(y, hv, rv, c, beta);
                    if total >= best.0 {
                        break;
                    }
                }
                if total < best.0 {
                    best = (total, hi, ri);
                }
            }
            best
        })
        .reduce(
            || (f64::INFINITY, usize::MAX, usize::MAX),
            |a, b| {
                if b.0 < a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) {
                    b
                } else {
                    a
                }
            },
        );
    debug_assert!(value.is_finite());
    (hs[hi].params.clone(), rs[ri].params.clone())
}
