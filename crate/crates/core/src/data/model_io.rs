//! JSON model files.
//!
//! ```text
//! {
//!   "format_version": 1,
//!   "kind": "lwa" | "svm",
//!   "dim": <d>,
//!   "hyperparameters": { "lambda_w", "lambda_u", "c", "iterations", "seed" },   // svm: lambda_w, iterations, seed
//!   "w": [...], "u": [...],            // u only for lwa
//!   "b": <real>, "b_prime": <real>,    // b_prime only for lwa
//!   "normalizer": null | { "min": [...], "max": [...] }
//! }
//! ```
//!
//! Floats are written in shortest round-trip form, so a loaded model scores
//! bit-identically to the one that was saved.

use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use super::NormalizationParams;
use crate::error::{Error, Result};
use crate::types::{FeatureVector, Hyperparameters, LwaModel, PredictionOutcome, SvmModel};

pub const FORMAT_VERSION: u64 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Lwa(LwaModel),
    Svm(SvmModel),
}

impl Model {
    pub fn dim(&self) -> usize {
        match self {
            Model::Lwa(m) => m.dim(),
            Model::Svm(m) => m.dim(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Model::Lwa(_) => "lwa",
            Model::Svm(_) => "svm",
        }
    }

    pub fn predict(&self, x: &[f64]) -> Result<PredictionOutcome> {
        match self {
            Model::Lwa(m) => m.predict(x),
            Model::Svm(m) => m.predict(x),
        }
    }
}

/// A trained model plus the feature scaling that must be applied to raw
/// inputs before scoring, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct SavedModel {
    pub model: Model,
    pub normalizer: Option<NormalizationParams>,
}

impl SavedModel {
    pub fn new(model: Model) -> Self {
        SavedModel {
            model,
            normalizer: None,
        }
    }

    pub fn with_normalizer(mut self, normalizer: NormalizationParams) -> Self {
        self.normalizer = Some(normalizer);
        self
    }

    /// Normalizes (when configured) and predicts a raw feature vector.
    pub fn predict_raw(&self, x: &[f64]) -> Result<PredictionOutcome> {
        Error::check_dim(self.model.dim(), x.len())?;
        match &self.normalizer {
            Some(n) => self.model.predict(&n.apply_values(x)?),
            None => self.model.predict(x),
        }
    }
}

#[derive(Serialize)]
struct LwaHyperOut {
    lambda_w: f64,
    lambda_u: f64,
    c: f64,
    iterations: u64,
    seed: u64,
}

#[derive(Serialize)]
struct SvmHyperOut {
    lambda_w: f64,
    iterations: u64,
    seed: u64,
}

#[derive(Serialize)]
#[serde(untagged)]
enum HyperOut {
    Lwa(LwaHyperOut),
    Svm(SvmHyperOut),
}

#[derive(Serialize)]
struct ModelFileOut<'a> {
    format_version: u64,
    kind: &'static str,
    dim: usize,
    hyperparameters: HyperOut,
    w: &'a [f64],
    #[serde(skip_serializing_if = "Option::is_none")]
    u: Option<&'a [f64]>,
    b: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    b_prime: Option<f64>,
    normalizer: Option<&'a NormalizationParams>,
}

pub fn model_to_string(saved: &SavedModel) -> Result<String> {
    let out = match &saved.model {
        Model::Lwa(m) => ModelFileOut {
            format_version: FORMAT_VERSION,
            kind: "lwa",
            dim: m.dim(),
            hyperparameters: HyperOut::Lwa(LwaHyperOut {
                lambda_w: m.hyper.lambda_w,
                lambda_u: m.hyper.lambda_u,
                c: m.hyper.c,
                iterations: m.hyper.iterations,
                seed: m.hyper.seed,
            }),
            w: &m.w,
            u: Some(&m.u),
            b: m.b,
            b_prime: Some(m.b_prime),
            normalizer: saved.normalizer.as_ref(),
        },
        Model::Svm(m) => ModelFileOut {
            format_version: FORMAT_VERSION,
            kind: "svm",
            dim: m.dim(),
            hyperparameters: HyperOut::Svm(SvmHyperOut {
                lambda_w: m.lambda_w,
                iterations: m.iterations,
                seed: m.seed,
            }),
            w: &m.w,
            u: None,
            b: m.b,
            b_prime: None,
            normalizer: saved.normalizer.as_ref(),
        },
    };
    let mut s = serde_json::to_string_pretty(&out).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn field<'a>(obj: &'a Map<String, Value>, name: &str) -> Result<&'a Value> {
    obj.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field '{name}'")))
}

fn f64_field(obj: &Map<String, Value>, name: &str) -> Result<f64> {
    field(obj, name)?
        .as_f64()
        .ok_or_else(|| Error::Parse(format!("field '{name}' is not a number")))
}

fn u64_field(obj: &Map<String, Value>, name: &str) -> Result<u64> {
    field(obj, name)?
        .as_u64()
        .ok_or_else(|| Error::Parse(format!("field '{name}' is not a non-negative integer")))
}

fn vec_field(obj: &Map<String, Value>, name: &str, dim: usize) -> Result<Vec<f64>> {
    let arr = field(obj, name)?
        .as_array()
        .ok_or_else(|| Error::Parse(format!("field '{name}' is not an array")))?;
    if arr.len() != dim {
        return Err(Error::Parse(format!(
            "field '{name}' has {} entries, expected dim = {dim}",
            arr.len()
        )));
    }
    arr.iter()
        .map(|v| {
            v.as_f64()
                .ok_or_else(|| Error::Parse(format!("field '{name}' contains a non-number")))
        })
        .collect()
}

fn object<'a>(v: &'a Value, name: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::Parse(format!("field '{name}' is not an object")))
}

pub fn model_from_str(text: &str) -> Result<SavedModel> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
    let obj = object(&root, "<root>")?;
    let version = u64_field(obj, "format_version")?;
    if version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion {
            found: version,
            expected: FORMAT_VERSION,
        });
    }
    let kind = field(obj, "kind")?
        .as_str()
        .ok_or_else(|| Error::Parse("field 'kind' is not a string".into()))?;
    let dim = u64_field(obj, "dim")? as usize;
    let hp = object(field(obj, "hyperparameters")?, "hyperparameters")?;
    let w = vec_field(obj, "w", dim)?;
    let b = f64_field(obj, "b")?;
    fn field_err(name: &'static str) -> impl Fn(Error) -> Error {
        move |e| Error::Parse(format!("field '{name}': {e}"))
    }

    let model = match kind {
        "lwa" => {
            let u = vec_field(obj, "u", dim)?;
            let b_prime = f64_field(obj, "b_prime")?;
            let hyper = Hyperparameters::new(
                f64_field(hp, "lambda_w")?,
                f64_field(hp, "lambda_u")?,
                f64_field(hp, "c")?,
                u64_field(hp, "iterations")?,
                u64_field(hp, "seed")?,
            )
            .map_err(field_err("hyperparameters"))?;
            Model::Lwa(LwaModel::new(w, u, b, b_prime, hyper).map_err(field_err("w"))?)
        }
        "svm" => Model::Svm(
            SvmModel::new(
                w,
                b,
                f64_field(hp, "lambda_w")?,
                u64_field(hp, "iterations")?,
                u64_field(hp, "seed")?,
            )
            .map_err(field_err("w"))?,
        ),
        other => return Err(Error::Parse(format!("field 'kind' has unknown value '{other}'"))),
    };

    let normalizer = match obj.get("normalizer") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let n = object(v, "normalizer")?;
            let min = vec_field(n, "min", dim).map_err(field_err("normalizer"))?;
            let max = vec_field(n, "max", dim).map_err(field_err("normalizer"))?;
            FeatureVector::new(min.clone()).map_err(field_err("normalizer.min"))?;
            FeatureVector::new(max.clone()).map_err(field_err("normalizer.max"))?;
            Some(NormalizationParams { min, max })
        }
    };
    Ok(SavedModel { model, normalizer })
}

pub fn save_model(saved: &SavedModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, model_to_string(saved)?).map_err(|e| Error::io(path, e))
}

pub fn load_model(path: impl AsRef<Path>) -> Result<SavedModel> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    model_from_str(&text)
}
