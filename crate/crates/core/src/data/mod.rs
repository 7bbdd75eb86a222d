//! Dataset ingestion, normalization, synthetic data, and file formats for
//! models, reports and sweep tables.

mod csv_io;
mod model_io;
mod normalize;
mod report_io;
mod synth;

pub use csv_io::{
    load_csv, load_features_csv, load_sweep_table, parse_dataset, save_csv, save_sweep_table, write_dataset,
    write_sweep_table, SWEEP_HEADER,
};
pub use model_io::{load_model, model_from_str, model_to_string, save_model, Model, SavedModel, FORMAT_VERSION};
pub use normalize::{apply_normalizer, fit_normalizer, NormalizationParams};
pub use report_io::{load_report, report_to_string, save_report};
pub use synth::{generate_synthetic, SynthKind, SynthSpec, OVERLAP_SEPARATION, PATCH_SIDE};
