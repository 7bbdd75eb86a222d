//! Selective binary classification with a learned reject option.
//!
//! The central model ([`LwaModel`]) pairs a linear discriminant
//! `h(x) = w.x + b` with a linear rejection function `r(x) = u.x + b'`: an
//! example is rejected when `r(x) < 0` and otherwise labeled by the sign of
//! `h(x)`. Both functions are learned jointly by stochastic sub-gradient
//! descent ([`solvers::train_lwa`]) on a convex surrogate of the 0 / 1 / c
//! abstention loss ([`loss`]), where `c` in (0, 0.5) is the price of one
//! abstention.
//!
//! Around the model sit a Pegasos linear SVM and a 1-nearest-neighbor
//! baseline, a leave-one-out harness with accuracy / AUC / abstention
//! metrics ([`eval`]), dataset and model files plus synthetic data
//! ([`data`]), and a batch CLI ([`cli`]).
//!
//! ```
//! use lwa::data::{generate_synthetic, SynthSpec};
//! use lwa::solvers::train_lwa;
//! use lwa::Hyperparameters;
//!
//! let data = generate_synthetic(&SynthSpec::two_blobs(20, 2, 6.0, 1)).unwrap();
//! let hyper = Hyperparameters::default().with_iterations(20_000);
//! let (model, _trace) = train_lwa(&data, &hyper).unwrap();
//! let outcome = model.predict(&data.examples()[0].x).unwrap();
//! println!("{outcome:?}");
//! ```
//!
//! The `examples/` directory holds one runnable program per capability.

pub mod cli;
pub mod data;
pub mod error;
pub mod eval;
pub mod loss;
pub mod solvers;
pub mod types;

pub use error::{Error, Result};
pub use types::{
    Dataset, EvalReport, FeatureVector, Hyperparameters, Label, LabeledExample, LwaModel, PredictionOutcome,
    PredictionRecord, SvmModel,
};
