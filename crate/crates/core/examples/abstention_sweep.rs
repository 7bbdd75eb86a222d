//! Sweep the abstention cost on overlapping blobs and write the plot-ready
//! table.
//!
//! cargo run --release --example abstention_sweep -- sweep.csv

use lwa::data::{generate_synthetic, save_sweep_table, SynthSpec};
use lwa::eval::{expand_grid, spearman, sweep_c};
use lwa::Hyperparameters;

fn main() -> lwa::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "sweep.csv".into());
    let data = generate_synthetic(&SynthSpec::overlap_blobs(100, 2, 0))?;
    let grid = expand_grid(0.05, 0.45, 0.05)?;
    let points = sweep_c(&data, &Hyperparameters::default(), &grid)?;

    println!("{:>5} {:>9} {:>9} {:>7}", "c", "abstain", "accuracy", "auc");
    for p in &points {
        let f = |v: Option<f64>| v.map_or("n/a".to_string(), |v| format!("{v:.3}"));
        println!(
            "{:>5.2} {:>9.3} {:>9} {:>7}",
            p.c,
            p.abstention_fraction,
            f(p.accuracy_on_accepted),
            f(p.auc_roc)
        );
    }
    let fracs: Vec<f64> = points.iter().map(|p| p.abstention_fraction).collect();
    println!("spearman(c, abstention) = {:?}", spearman(&grid, &fracs));
    save_sweep_table(&points, &out)?;
    println!("table written to {out}");
    Ok(())
}
