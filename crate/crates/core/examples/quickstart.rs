//! Train an abstaining classifier on two nearby blobs and look at a few
//! predictions.
//!
//! cargo run --release --example quickstart

use lwa::data::{generate_synthetic, SynthSpec};
use lwa::solvers::train_lwa;
use lwa::{Hyperparameters, PredictionOutcome};

fn main() -> lwa::Result<()> {
    let data = generate_synthetic(&SynthSpec::two_blobs(100, 2, 2.0, 0))?;
    let hyper = Hyperparameters::default().with_c(0.4);
    let (model, _) = train_lwa(&data, &hyper)?;
    println!("w = {:?}, b = {:.3}", model.w, model.b);
    println!("u = {:?}, b' = {:.3}", model.u, model.b_prime);

    for x in [[-2.0, 0.0], [-0.2, 0.5], [0.0, 0.0], [0.3, -1.0], [2.5, 1.0]] {
        match model.predict(&x)? {
            PredictionOutcome::Accepted { label, h_score, .. } => println!("{x:?} -> {label} (h = {h_score:.3})"),
            PredictionOutcome::Rejected { r_score, .. } => println!("{x:?} -> reject (r = {r_score:.3})"),
        }
    }
    Ok(())
}
