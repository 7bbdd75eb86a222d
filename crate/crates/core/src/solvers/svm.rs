use super::IndexSampler;
use crate::error::{Error, Result};
use crate::types::{validate_lambda, Dataset, SvmModel};

/// Pegasos: minimizes `(lambda/2)|w|^2 + mean hinge loss` by stochastic
/// sub-gradient steps of size `1/(lambda t)`. The bias is an unregularized
/// parameter stepped with the same size.
pub fn train_svm(data: &Dataset, lambda_w: f64, iterations: u64, seed: u64) -> Result<SvmModel> {
    validate_lambda("lambda_w", lambda_w)?;
    if iterations == 0 {
        return Err(Error::invalid("iterations must be at least 1"));
    }
    data.require_both_classes()?;

    let mut w = vec![0.0; data.dim()];
    let mut b = 0.0;
    let examples = data.examples();
    let mut sampler = IndexSampler::new(seed, examples.len());

    for t in 1..=iterations {
        let ex = &examples[sampler.next_index()];
        let x = ex.x.as_slice();
        let y = ex.y.sign();
        let margin = y * (crate::types::dot(&w, x) + b);
        let tf = t as f64;
        let shrink = 1.0 - 1.0 / tf;
        if margin < 1.0 {
            let step = y / (lambda_w * tf);
            for (wi, xi) in w.iter_mut().zip(x) {
                *wi = shrink * *wi + step * xi;
            }
            b += step;
        } else {
            for wi in w.iter_mut() {
                *wi *= shrink;
            }
        }
    }
    SvmModel::new(w, b, lambda_w, iterations, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Label;

    #[test]
    fn first_step_from_zero_weights() {
        let data = Dataset::from_pairs(vec![
            (vec![2.0, -1.0], Label::Negative),
            (vec![0.5, 4.0], Label::Positive),
        ])
        .unwrap();
        let m = train_svm(&data, 0.25, 1, 9).unwrap();
        let idx = IndexSampler::new(9, 2).next_index();
        let e = &data.examples()[idx];
        let y = e.y.sign();
        assert_eq!(m.w, vec![y * e.x[0] / 0.25, y * e.x[1] / 0.25]);
        assert_eq!(m.b, y / 0.25);
    }

    #[test]
    fn same_seed_same_model() {
        let data = Dataset::from_pairs((0..20).map(|i| {
            let v = i as f64 / 10.0 - 1.0;
            (vec![v, v * v], if v > 0.0 { Label::Positive } else { Label::Negative })
        }))
        .unwrap();
        assert_eq!(
            train_svm(&data, 1e-2, 2000, 5).unwrap(),
            train_svm(&data, 1e-2, 2000, 5).unwrap()
        );
    }

    #[test]
    fn validates_inputs() {
        let data = Dataset::from_pairs(vec![(vec![1.0], Label::Negative), (vec![2.0], Label::Positive)]).unwrap();
        assert!(train_svm(&data, 0.0, 10, 0).is_err());
        assert!(train_svm(&data, 1.0, 0, 0).is_err());
        let one_class = Dataset::from_pairs(vec![(vec![1.0], Label::Negative)]).unwrap();
        assert!(train_svm(&one_class, 1.0, 10, 0).is_err());
    }
}
