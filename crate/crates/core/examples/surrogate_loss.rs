//! Print the 0 / 1 / c abstention loss next to its convex surrogate and the
//! hinge loss, with the sub-gradient branch active at each point.
//!
//! cargo run --example surrogate_loss

use lwa::loss::{hinge_loss, lwa_subgradient, surrogate_loss, true_abstention_loss};
use lwa::{Hyperparameters, Label, LabeledExample, LwaModel};

fn main() -> lwa::Result<()> {
    let c = 0.25;
    let y = Label::Positive;
    println!(
        "{:>6} {:>6} {:>8} {:>10} {:>8}  branch",
        "y*h", "r", "true", "surrogate", "hinge"
    );
    for (h, r) in [
        (3.0, 2.0),
        (2.0, 1.0),
        (0.5, 0.5),
        (-1.0, 1.0),
        (-1.0, -0.5),
        (0.0, -2.0),
        (4.0, -10.0),
    ] {
        // a 1-d model with w = h, u = r evaluated at x = 1 reproduces the scores
        let model = LwaModel::new(vec![h], vec![r], 0.0, 0.0, Hyperparameters::default().with_c(c))?;
        let g = lwa_subgradient(&LabeledExample::from_values(vec![1.0], y)?, &model)?;
        println!(
            "{h:>6.2} {r:>6.2} {:>8.3} {:>10.3} {:>8.3}  {:?}",
            true_abstention_loss(y, h, r, c)?,
            surrogate_loss(y, h, r, c)?,
            hinge_loss(y, h),
            g.branch
        );
    }
    Ok(())
}
