use crate::error::{Error, Result};
use crate::types::{Dataset, FeatureVector, Label, PredictionOutcome};

/// 1-nearest-neighbor classifier under the Euclidean distance. Stores the
/// training set verbatim.
#[derive(Debug, Clone, PartialEq)]
pub struct NnModel {
    data: Dataset,
}

impl NnModel {
    pub fn data(&self) -> &Dataset {
        &self.data
    }

    pub fn dim(&self) -> usize {
        self.data.dim()
    }

    /// Index of the nearest stored example; ties go to the lowest index.
    pub fn nearest(&self, x: &[f64]) -> Result<usize> {
        Error::check_dim(self.dim(), x.len())?;
        let mut best = (0, f64::INFINITY);
        for (i, e) in self.data.iter().enumerate() {
            let d2: f64 = e.x.iter().zip(x).map(|(a, b)| (a - b) * (a - b)).sum();
            if d2 < best.1 {
                best = (i, d2);
            }
        }
        Ok(best.0)
    }

    /// Accepted outcome whose `h_score` is the predicted label as +1.0 / -1.0.
    pub fn predict(&self, x: &[f64]) -> Result<PredictionOutcome> {
        let label = self.data.examples()[self.nearest(x)?].y;
        Ok(PredictionOutcome::Accepted {
            label,
            h_score: label.sign(),
            r_score: None,
        })
    }
}

pub fn train_nn(data: &Dataset) -> Result<NnModel> {
    if data.is_empty() {
        return Err(Error::invalid("nearest-neighbor model needs at least one example"));
    }
    Ok(NnModel { data: data.clone() })
}

pub fn predict_nn(model: &NnModel, x: &FeatureVector) -> Result<Label> {
    let i = model.nearest(x)?;
    Ok(model.data.examples()[i].y)
}
