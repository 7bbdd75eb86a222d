//! Leave-one-out comparison of the abstaining classifier, the linear SVM
//! and 1-NN on the same data, as one table.
//!
//! cargo run --release --example compare_classifiers [csv]

use lwa::cli::headline_table;
use lwa::data::{generate_synthetic, load_csv, SynthSpec};
use lwa::eval::{loocv, SvmParams, Trainer};
use lwa::Hyperparameters;

fn main() -> lwa::Result<()> {
    let data = match std::env::args().nth(1) {
        Some(path) => load_csv(path)?,
        None => generate_synthetic(&SynthSpec::two_blobs(57, 2, 2.5, 3))?,
    };
    println!("{} examples, dim {}\n", data.len(), data.dim());
    for (name, trainer) in [
        ("NN", Trainer::Nn),
        ("SVM", Trainer::Svm(SvmParams::default())),
        ("LWA", Trainer::Lwa(Hyperparameters::default())),
    ] {
        println!("{}", headline_table(name, &loocv(&data, &trainer)?));
    }
    Ok(())
}
