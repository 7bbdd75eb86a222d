//! Compare the stochastic solver's objective with an exhaustive grid search
//! on a small two-dimensional problem.
//!
//! cargo run --release --example oracle_check

use lwa::data::{apply_normalizer, fit_normalizer, generate_synthetic, SynthSpec};
use lwa::loss::objective_value;
use lwa::solvers::{oracle_minimize_lwa, train_lwa, OracleGrid};
use lwa::{Hyperparameters, LwaModel};

fn main() -> lwa::Result<()> {
    let raw = generate_synthetic(&SynthSpec::two_blobs(6, 2, 2.0, 11))?;
    let data = apply_normalizer(&fit_normalizer(&raw)?, &raw)?;
    let hyper = Hyperparameters::new(0.1, 0.1, 0.3, 200_000, 0)?;
    let (sgd, _) = train_lwa(&data, &hyper)?;

    // the solver's per-example objective, scaled to the summed form
    let n = data.len() as f64;
    let summed = hyper.with_lambdas(hyper.lambda_w * n, hyper.lambda_u * n);
    let oracle = oracle_minimize_lwa(&data, &summed, &OracleGrid::default())?;
    let sgd = LwaModel { hyper: summed, ..sgd };
    println!(
        "sgd:    {:.5}  w {:?} u {:?}",
        objective_value(&data, &sgd)?,
        sgd.w,
        sgd.u
    );
    println!(
        "oracle: {:.5}  w {:?} u {:?}",
        objective_value(&data, &oracle)?,
        oracle.w,
        oracle.u
    );
    Ok(())
}
