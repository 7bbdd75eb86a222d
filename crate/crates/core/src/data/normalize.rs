use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{Dataset, FeatureVector, LabeledExample};

/// Per-feature min-max scaling fitted on a training set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationParams {
    pub min: Vec<f64>,
    pub max: Vec<f64>,
}

impl NormalizationParams {
    pub fn dim(&self) -> usize {
        self.min.len()
    }

    /// Maps feature `j` to `(v - min_j) / (max_j - min_j)`, or 0 for a
    /// constant feature. Values outside the fitted range are not clipped.
    pub fn apply_values(&self, x: &[f64]) -> Result<FeatureVector> {
        Error::check_dim(self.dim(), x.len())?;
        let values = x
            .iter()
            .zip(self.min.iter().zip(&self.max))
            .map(|(&v, (&lo, &hi))| if hi > lo { (v - lo) / (hi - lo) } else { 0.0 })
            .collect();
        FeatureVector::new(values)
    }
}

pub fn fit_normalizer(data: &Dataset) -> Result<NormalizationParams> {
    if data.is_empty() {
        return Err(Error::invalid("cannot fit a normalizer on an empty dataset"));
    }
    let d = data.dim();
    let mut min = vec![f64::INFINITY; d];
    let mut max = vec![f64::NEG_INFINITY; d];
    for e in data {
        for (j, &v) in e.x.iter().enumerate() {
            min[j] = min[j].min(v);
            max[j] = max[j].max(v);
        }
    }
    Ok(NormalizationParams { min, max })
}

pub fn apply_normalizer(params: &NormalizationParams, data: &Dataset) -> Result<Dataset> {
    let examples = data
        .iter()
        .map(|e| Ok(LabeledExample::new(params.apply_values(&e.x)?, e.y)))
        .collect::<Result<Vec<_>>>()?;
    Dataset::new(examples)
}
