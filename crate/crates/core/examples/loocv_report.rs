//! Leave-one-out evaluation with per-fold normalization, written as a JSON
//! report and read back.
//!
//! cargo run --release --example loocv_report -- report.json

use lwa::data::{generate_synthetic, load_report, save_report, SynthSpec};
use lwa::eval::{loocv_with, LoocvOptions, Trainer};
use lwa::Hyperparameters;

fn main() -> lwa::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "loocv_report.json".into());
    let raw = generate_synthetic(&SynthSpec::two_blobs(40, 5, 2.0, 11))?;
    // shift and stretch one feature so scaling matters
    let data = lwa::Dataset::from_pairs(raw.iter().map(|e| {
        let mut v = e.x.to_vec();
        v[0] = 100.0 * v[0] + 500.0;
        (v, e.y)
    }))?;

    let report = loocv_with(
        &data,
        &Trainer::Lwa(Hyperparameters::default().with_c(0.4)),
        &LoocvOptions { normalize: true },
    )?;
    save_report(&report, &out)?;
    let back = load_report(&out)?;
    assert_eq!(back, report);

    println!("accuracy on accepted: {:?}", report.accuracy_on_accepted);
    println!(
        "accuracy, rejections as errors: {:.3}",
        report.overall_accuracy_counting_rejects_as_errors
    );
    println!("abstained {} of {}", report.n_abstained, report.n_total());
    println!("AUC over accepted: {:?}", report.auc_roc);
    println!("report written to {out}");
    Ok(())
}
