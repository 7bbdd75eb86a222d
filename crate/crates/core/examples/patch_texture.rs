//! Train on 4096-dimensional texture patches (a 64 x 64 raster per example)
//! and report the wall time and training outcome.
//!
//! cargo run --release --example patch_texture

use std::time::Instant;

use lwa::data::{generate_synthetic, SynthSpec};
use lwa::solvers::train_lwa;
use lwa::Hyperparameters;

fn main() -> lwa::Result<()> {
    let data = generate_synthetic(&SynthSpec::patch_texture(57, 1.0, 0))?;
    println!("{} patches of dim {}", data.len(), data.dim());

    let start = Instant::now();
    let (model, _) = train_lwa(&data, &Hyperparameters::default())?;
    println!("trained in {:.2}s", start.elapsed().as_secs_f64());

    let (mut rejected, mut wrong) = (0, 0);
    for e in &data {
        match model.predict(&e.x)?.label() {
            None => rejected += 1,
            Some(l) if l != e.y => wrong += 1,
            Some(_) => {}
        }
    }
    println!("training set: {rejected} rejected, {wrong} misclassified");
    Ok(())
}
