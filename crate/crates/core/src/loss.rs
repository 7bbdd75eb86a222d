//! Abstention loss, its convex surrogate, the hinge loss, and the
//! sub-gradients the stochastic solvers step along.
//!
//! With `t2 = 1 + (r - y h) / 2` and `t3 = c (1 - beta r)`, the surrogate is
//! `max(0, t2, t3)`. Which of the three terms is active selects the
//! sub-gradient [`Branch`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{beta, dot, validate_cost, Dataset, Label, LabeledExample, LwaModel};

/// The 0 / 1 / c loss of an abstaining prediction.
///
/// Charges `c` whenever `r <= 0`, 1 for an accepted (`r > 0`) example with
/// `y h <= 0`, and 0 otherwise.
pub fn true_abstention_loss(y: Label, h: f64, r: f64, c: f64) -> Result<f64> {
    validate_cost(c)?;
    let misclassified = y.sign() * h <= 0.0;
    Ok(if r <= 0.0 {
        c
    } else if misclassified {
        1.0
    } else {
        0.0
    })
}

/// Convex upper bound of [`true_abstention_loss`]:
/// `max(0, 1 + (r - y h) / 2, c (1 - beta r))` with `beta = 1 / (1 - 2c)`.
pub fn surrogate_loss(y: Label, h: f64, r: f64, c: f64) -> Result<f64> {
    validate_cost(c)?;
    Ok(surrogate(y.sign(), h, r, c, beta(c)))
}

#[inline]
pub(crate) fn surrogate(y: f64, h: f64, r: f64, c: f64, beta: f64) -> f64 {
    let (t2, t3) = terms(y, h, r, c, beta);
    0f64.max(t2).max(t3)
}

#[inline]
fn terms(y: f64, h: f64, r: f64, c: f64, beta: f64) -> (f64, f64) {
    (1.0 + 0.5 * (r - y * h), c * (1.0 - beta * r))
}

/// `max(0, 1 - y h)`.
pub fn hinge_loss(y: Label, h: f64) -> f64 {
    0f64.max(1.0 - y.sign() * h)
}

/// Which surrogate term is strictly dominant at a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// `1 + (r - y h)/2 > max(0, c (1 - beta r))`
    MarginViolation,
    /// `c (1 - beta r) > max(0, 1 + (r - y h)/2)`
    RejectionActive,
    /// Neither strict inequality holds (zero loss, or a tie between terms).
    Neither,
}

#[inline]
pub(crate) fn branch(y: f64, h: f64, r: f64, c: f64, beta: f64) -> Branch {
    let (t2, t3) = terms(y, h, r, c, beta);
    if t2 > 0f64.max(t3) {
        Branch::MarginViolation
    } else if t3 > 0f64.max(t2) {
        Branch::RejectionActive
    } else {
        Branch::Neither
    }
}

/// Sub-gradient of the single-example objective
/// `(lambda_w/2)|w|^2 + (lambda_u/2)|u|^2 + surrogate` with respect to every
/// trainable parameter. Biases are unregularized.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubgradientPair {
    pub grad_w: Vec<f64>,
    pub grad_u: Vec<f64>,
    pub grad_b: f64,
    pub grad_b_prime: f64,
    pub branch: Branch,
}

pub fn lwa_subgradient(example: &LabeledExample, model: &LwaModel) -> Result<SubgradientPair> {
    Error::check_dim(model.dim(), example.x.len())?;
    let hp = &model.hyper;
    validate_cost(hp.c)?;
    let x = example.x.as_slice();
    let y = example.y.sign();
    let c = hp.c;
    let beta = hp.beta();
    let br = branch(y, model.h(x), model.r(x), c, beta);

    let mut grad_w: Vec<f64> = model.w.iter().map(|w| hp.lambda_w * w).collect();
    let mut grad_u: Vec<f64> = model.u.iter().map(|u| hp.lambda_u * u).collect();
    let (grad_b, grad_b_prime) = match br {
        Branch::MarginViolation => {
            for ((gw, gu), xi) in grad_w.iter_mut().zip(grad_u.iter_mut()).zip(x) {
                *gw -= 0.5 * y * xi;
                *gu += 0.5 * xi;
            }
            (-0.5 * y, 0.5)
        }
        Branch::RejectionActive => {
            for (gu, xi) in grad_u.iter_mut().zip(x) {
                *gu -= c * beta * xi;
            }
            (0.0, -c * beta)
        }
        Branch::Neither => (0.0, 0.0),
    };
    Ok(SubgradientPair {
        grad_w,
        grad_u,
        grad_b,
        grad_b_prime,
        branch: br,
    })
}

fn regularizer(model: &LwaModel) -> f64 {
    let hp = &model.hyper;
    0.5 * hp.lambda_w * dot(&model.w, &model.w) + 0.5 * hp.lambda_u * dot(&model.u, &model.u)
}

fn total_surrogate(data: &Dataset, model: &LwaModel) -> Result<f64> {
    Error::check_dim(model.dim(), data.dim())?;
    validate_cost(model.hyper.c)?;
    let c = model.hyper.c;
    let beta = model.hyper.beta();
    Ok(data
        .iter()
        .map(|e| surrogate(e.y.sign(), model.h(&e.x), model.r(&e.x), c, beta))
        .sum())
}

/// `(lambda_w/2)|w|^2 + (lambda_u/2)|u|^2 + sum_i surrogate(y_i, h(x_i), r(x_i), c)`.
pub fn objective_value(data: &Dataset, model: &LwaModel) -> Result<f64> {
    Ok(regularizer(model) + total_surrogate(data, model)?)
}

/// The objective the stochastic solver actually descends: the regularizer
/// plus the *mean* surrogate loss. Equals `objective_value` evaluated with
/// both lambdas multiplied by `N`, divided by `N`.
pub fn stochastic_objective_value(data: &Dataset, model: &LwaModel) -> Result<f64> {
    Ok(regularizer(model) + total_surrogate(data, model)? / data.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::types::Hyperparameters;
    use proptest::prelude::*;

    const POS: Label = Label::Positive;
    const NEG: Label = Label::Negative;

    fn model(w: Vec<f64>, u: Vec<f64>, b: f64, bp: f64, c: f64) -> LwaModel {
        let hyper = Hyperparameters::new(0.1, 0.2, c, 1, 0).unwrap();
        LwaModel::new(w, u, b, bp, hyper).unwrap()
    }

    #[test]
    fn true_loss_examples() {
        assert_eq!(true_abstention_loss(POS, 0.5, 0.3, 0.25).unwrap(), 0.0);
        assert_eq!(true_abstention_loss(POS, -0.5, 0.3, 0.25).unwrap(), 1.0);
        assert_eq!(true_abstention_loss(NEG, -3.0, -0.1, 0.25).unwrap(), 0.25);
        // r == 0 is charged as an abstention
        assert_eq!(true_abstention_loss(POS, -1.0, 0.0, 0.25).unwrap(), 0.25);
        assert!(true_abstention_loss(POS, 1.0, 1.0, 0.5).is_err());
        assert!(true_abstention_loss(POS, 1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn surrogate_examples() {
        assert_eq!(surrogate_loss(POS, 4.0, 2.0, 0.25).unwrap(), 0.0);
        assert_eq!(surrogate_loss(POS, 2.0, 1.0, 0.25).unwrap(), 0.5);
        assert_eq!(surrogate_loss(POS, 0.0, -2.0, 0.25).unwrap(), 1.25);
        assert!(surrogate_loss(POS, 0.0, 0.0, 0.7).is_err());
    }

    #[test]
    fn hinge_examples() {
        assert_eq!(hinge_loss(POS, 1.0), 0.0);
        assert_eq!(hinge_loss(POS, -1.0), 2.0);
        assert_eq!(hinge_loss(NEG, -5.0), 0.0);
    }

    #[test]
    fn subgradient_at_zero_model_is_margin_violation() {
        let m = model(vec![0.0, 0.0], vec![0.0, 0.0], 0.0, 0.0, 0.25);
        for (x, y) in [(vec![1.0, -2.0], POS), (vec![0.5, 3.0], NEG)] {
            let e = LabeledExample::from_values(x.clone(), y).unwrap();
            let g = lwa_subgradient(&e, &m).unwrap();
            assert_eq!(g.branch, Branch::MarginViolation);
            let expect_w: Vec<f64> = x.iter().map(|v| -0.5 * y.sign() * v).collect();
            let expect_u: Vec<f64> = x.iter().map(|v| 0.5 * v).collect();
            assert_eq!(g.grad_w, expect_w);
            assert_eq!(g.grad_u, expect_u);
            assert_eq!(g.grad_b, -0.5 * y.sign());
            assert_eq!(g.grad_b_prime, 0.5);
        }
    }

    #[test]
    fn subgradient_neither_branch() {
        // x = (1, 0), y = +1: h = 10, r = 2; t2 = 1 + (2 - 10)/2 = -3, t3 = 0.25 (1 - 4) = -0.75
        let m = model(vec![10.0, 3.0], vec![2.0, -1.0], 0.0, 0.0, 0.25);
        let e = LabeledExample::from_values(vec![1.0, 0.0], POS).unwrap();
        let g = lwa_subgradient(&e, &m).unwrap();
        assert_eq!(g.branch, Branch::Neither);
        assert_eq!(g.grad_w, vec![0.1 * 10.0, 0.1 * 3.0]);
        assert_eq!(g.grad_u, vec![0.2 * 2.0, -0.2]);
        assert_eq!((g.grad_b, g.grad_b_prime), (0.0, 0.0));
    }

    #[test]
    fn equal_scores_sit_on_the_margin_term() {
        // y h = r makes t2 = 1, so the margin term is active
        let m = model(vec![10.0, 3.0], vec![10.0, -1.0], 0.0, 0.0, 0.25);
        let e = LabeledExample::from_values(vec![1.0, 0.0], POS).unwrap();
        assert_eq!(lwa_subgradient(&e, &m).unwrap().branch, Branch::MarginViolation);
    }

    #[test]
    fn subgradient_rejection_branch() {
        // x = (1, 2), y = +1: h = 4, r = -10; t2 = 1 + (-14)/2 = -6, t3 = 0.25 (1 + 20) = 5.25
        let m = model(vec![4.0, 0.0], vec![-10.0, 0.0], 0.0, 0.0, 0.25);
        let e = LabeledExample::from_values(vec![1.0, 2.0], POS).unwrap();
        let g = lwa_subgradient(&e, &m).unwrap();
        assert_eq!(g.branch, Branch::RejectionActive);
        assert_eq!(g.grad_w, vec![0.1 * 4.0, 0.0]);
        assert_eq!(g.grad_u, vec![0.2 * -10.0 - 0.5 * 1.0, -0.5 * 2.0]);
        assert_eq!(g.grad_b, 0.0);
        assert_eq!(g.grad_b_prime, -0.5);
    }

    #[test]
    fn tie_between_terms_is_neither() {
        // c = 0.25, beta = 2: r = 0, yh = 1.5 gives t2 = 0.25 = t3
        assert_eq!(branch(1.0, 1.5, 0.0, 0.25, 2.0), Branch::Neither);
    }

    #[test]
    fn objective_examples() {
        let ds = Dataset::from_pairs(vec![(vec![0.3, -1.2], POS)]).unwrap();
        let zero = model(vec![0.0, 0.0], vec![0.0, 0.0], 0.0, 0.0, 0.25);
        assert_eq!(objective_value(&ds, &zero).unwrap(), 1.0);

        let ds5 =
            Dataset::from_pairs((0..5).map(|i| (vec![i as f64, 1.0], if i % 2 == 0 { POS } else { NEG }))).unwrap();
        assert_eq!(objective_value(&ds5, &zero).unwrap(), 5.0);

        let m = model(vec![0.7, -0.2], vec![0.1, 0.4], 0.3, -0.05, 0.3);
        let reg = regularizer(&m);
        let doubled = ds5.concat(&ds5).unwrap();
        let once = objective_value(&ds5, &m).unwrap() - reg;
        let twice = objective_value(&doubled, &m).unwrap() - reg;
        assert!((twice - 2.0 * once).abs() <= 1e-12 * twice.abs().max(1.0));

        let wrong_dim = Dataset::from_pairs(vec![(vec![1.0], POS)]).unwrap();
        assert!(objective_value(&wrong_dim, &m).is_err());
    }

    #[test]
    fn stochastic_objective_is_scaled_objective() {
        let ds = Dataset::from_pairs((0..7).map(|i| {
            (
                vec![i as f64 * 0.3, 1.0 - i as f64 * 0.1],
                if i % 3 == 0 { POS } else { NEG },
            )
        }))
        .unwrap();
        let m = model(vec![0.7, -0.2], vec![0.1, 0.4], 0.3, -0.05, 0.3);
        let n = ds.len() as f64;
        let mut scaled = m.clone();
        scaled.hyper.lambda_w *= n;
        scaled.hyper.lambda_u *= n;
        let a = stochastic_objective_value(&ds, &m).unwrap();
        let b = objective_value(&ds, &scaled).unwrap() / n;
        assert!((a - b).abs() < 1e-12);
    }

    fn label() -> impl Strategy<Value = Label> {
        prop_oneof![Just(POS), Just(NEG)]
    }

    proptest! {
        #[test]
        fn surrogate_dominates_true_loss(y in label(), h in -10.0..10.0f64, r in -10.0..10.0f64, c in 0.01..0.49f64) {
            prop_assert!(surrogate_loss(y, h, r, c).unwrap() >= true_abstention_loss(y, h, r, c).unwrap());
        }

        #[test]
        fn true_loss_takes_three_values(y in label(), h in -10.0..10.0f64, r in -10.0..10.0f64, c in 0.01..0.49f64) {
            let l = true_abstention_loss(y, h, r, c).unwrap();
            prop_assert!(l == 0.0 || l == 1.0 || l == c);
        }

        #[test]
        fn surrogate_convex_along_lines(
            y in label(),
            h1 in -10.0..10.0f64, r1 in -10.0..10.0f64,
            h2 in -10.0..10.0f64, r2 in -10.0..10.0f64,
            a in 0.0..=1.0f64, c in 0.01..0.49f64,
        ) {
            let mid = surrogate_loss(y, a * h1 + (1.0 - a) * h2, a * r1 + (1.0 - a) * r2, c).unwrap();
            let chord = a * surrogate_loss(y, h1, r1, c).unwrap() + (1.0 - a) * surrogate_loss(y, h2, r2, c).unwrap();
            prop_assert!(mid <= chord + 1e-9);
        }

        #[test]
        fn surrogate_penalizes_rejections_and_errors(y in label(), h in -10.0..10.0f64, r in -10.0..10.0f64, c in 0.01..0.49f64) {
            if r < 0.0 || y.sign() * h < 0.0 {
                prop_assert!(surrogate_loss(y, h, r, c).unwrap() > 0.0);
            }
        }
    }
}
