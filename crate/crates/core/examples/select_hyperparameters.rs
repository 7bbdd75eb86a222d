//! Pick the regularizers and abstention cost by stratified 5-fold
//! cross-validation under an abstention cap.
//!
//! cargo run --release --example select_hyperparameters

use lwa::data::{generate_synthetic, SynthSpec};
use lwa::eval::{select_hyperparameters, SelectionGrid, SelectionOptions};
use lwa::Hyperparameters;

fn main() -> lwa::Result<()> {
    let data = generate_synthetic(&SynthSpec::two_blobs(60, 2, 2.0, 5))?;
    let grid = SelectionGrid {
        lambda_w: vec![1e-3, 1e-2],
        lambda_u: vec![1e-3, 1e-1, 1.0],
        c: vec![0.2, 0.3, 0.4, 0.45],
    };
    let options = SelectionOptions {
        max_abstention: 0.2,
        ..SelectionOptions::default()
    };
    let base = Hyperparameters::default().with_iterations(50_000);
    let sel = select_hyperparameters(&data, &base, &grid, &options)?;

    println!(
        "{:>8} {:>8} {:>5} {:>9} {:>8}",
        "lambda", "lambda'", "c", "accuracy", "abstain"
    );
    for c in &sel.candidates {
        let acc = c.accuracy_on_accepted.map_or("n/a".to_string(), |a| format!("{a:.3}"));
        println!(
            "{:>8} {:>8} {:>5} {:>9} {:>8.3}",
            c.hyper.lambda_w, c.hyper.lambda_u, c.hyper.c, acc, c.abstention_fraction
        );
    }
    println!(
        "selected lambda = {}, lambda' = {}, c = {}{}",
        sel.hyper.lambda_w,
        sel.hyper.lambda_u,
        sel.hyper.c,
        if sel.infeasible { " (no point met the cap)" } else { "" }
    );
    Ok(())
}
