//! Train with a dense objective trace and print the smoothed curve.
//!
//! cargo run --release --example training_trace

use lwa::data::{generate_synthetic, SynthSpec};
use lwa::loss::{objective_value, stochastic_objective_value};
use lwa::solvers::train_lwa_traced;
use lwa::Hyperparameters;

fn main() -> lwa::Result<()> {
    let data = generate_synthetic(&SynthSpec::two_blobs(50, 2, 3.0, 1))?;
    let hyper = Hyperparameters::default().with_c(0.45);
    let (model, trace) = train_lwa_traced(&data, &hyper, Some(100))?;

    for (k, v) in trace.smoothed(10_000).iter().enumerate() {
        println!(
            "iterations {:>6}..{:>6}: mean objective {v:.4}",
            k * 10_000 + 1,
            (k + 1) * 10_000
        );
    }
    println!(
        "final per-example objective {:.4}",
        stochastic_objective_value(&data, &model)?
    );
    println!("final summed objective      {:.4}", objective_value(&data, &model)?);
    Ok(())
}
