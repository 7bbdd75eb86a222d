//! Leave-one-out evaluation, metrics, the abstention-cost sweep, and
//! cross-validated hyperparameter selection.

mod loocv;
mod metrics;
mod select;
mod sweep;

pub use loocv::{loocv, loocv_with, Fitted, LoocvOptions, SvmParams, Trainer};
pub use metrics::{auc_roc, average_ranks, report_metrics};
pub use select::{select_hyperparameters, stratified_folds, Candidate, Selection, SelectionGrid, SelectionOptions};
pub use sweep::{expand_grid, spearman, sweep_c, sweep_c_with, SweepPoint};
