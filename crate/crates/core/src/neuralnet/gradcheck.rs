use ndarray::ArrayView2;

use super::{MlpNet, NetError};

/// Denominator floor for [`relative_error`]. Central differences at
/// `h = 1e-5` carry ~1e-11 absolute error, so gradients below this floor are
/// compared absolutely.
pub const REL_ERROR_FLOOR: f64 = 1e-4;

/// `|a - b| / max(|a|, |b|, REL_ERROR_FLOOR)`.
pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(REL_ERROR_FLOOR)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct GradCheckReport {
    pub max_rel_param: f64,
    pub max_rel_input: f64,
    /// Coordinates compared.
    pub checked: usize,
    /// Coordinates skipped because a perturbation flipped a ReLU.
    pub skipped_kinks: usize,
}

impl GradCheckReport {
    pub fn max_rel(&self) -> f64 {
        self.max_rel_param.max(self.max_rel_input)
    }

    pub fn merge(self, other: GradCheckReport) -> GradCheckReport {
        GradCheckReport {
            max_rel_param: self.max_rel_param.max(other.max_rel_param),
            max_rel_input: self.max_rel_input.max(other.max_rel_input),
            checked: self.checked + other.checked,
            skipped_kinks: self.skipped_kinks + other.skipped_kinks,
        }
    }
}

/// Compare [`MlpNet::backward`] against central differences of `loss`.
///
/// `loss` maps the network output to `(L, dL/dy)`. Every parameter and input
/// coordinate is perturbed by `±h`; coordinates whose perturbation changes the
/// ReLU activation pattern are skipped, since the loss is not differentiable
/// across a kink.
pub fn gradient_check<L>(net: &MlpNet, input: &[f64], loss: L, h: f64) -> Result<GradCheckReport, NetError>
where
    L: Fn(&[f64]) -> (f64, Vec<f64>),
{
    let (y, tape) = net.forward(input)?;
    let (_, dy) = loss(&y);
    let dy = ArrayView2::from_shape((1, dy.len()), &dy)
        .map_err(|_| NetError::DimensionMismatch {
            expected: y.len(),
            got: dy.len(),
        })?
        .to_owned();
    let (gx, grads) = net.backward(&tape, dy.view())?;
    let pattern = tape.relu_pattern(net);

    let mut report = GradCheckReport::default();
    let mut probe = net.clone();

    let eval = |n: &MlpNet, x: &[f64]| -> Result<(f64, Vec<bool>), NetError> {
        let (y, t) = n.forward(x)?;
        Ok((loss(&y).0, t.relu_pattern(n)))
    };

    let analytic = grads.to_flat();
    let base = net.params_flat();
    let mut params = base.clone();
    for (k, &a) in analytic.iter().enumerate() {
        params[k] = base[k] + h;
        probe.set_params_flat(&params)?;
        let (lp, pp) = eval(&probe, input)?;
        params[k] = base[k] - h;
        probe.set_params_flat(&params)?;
        let (lm, pm) = eval(&probe, input)?;
        params[k] = base[k];
        if pp != pattern || pm != pattern {
            report.skipped_kinks += 1;
            continue;
        }
        let numeric = (lp - lm) / (2.0 * h);
        report.max_rel_param = report.max_rel_param.max(relative_error(a, numeric));
        report.checked += 1;
    }

    let mut x = input.to_vec();
    for (k, &a) in gx.iter().enumerate() {
        x[k] = input[k] + h;
        let (lp, pp) = eval(net, &x)?;
        x[k] = input[k] - h;
        let (lm, pm) = eval(net, &x)?;
        x[k] = input[k];
        if pp != pattern || pm != pattern {
            report.skipped_kinks += 1;
            continue;
        }
        let numeric = (lp - lm) / (2.0 * h);
        report.max_rel_input = report.max_rel_input.max(relative_error(a, numeric));
        report.checked += 1;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::neuralnet::Activation;

    #[test]
    fn zero_net_has_zero_error() {
        let net = MlpNet::zeros(&[3, 4, 2], &[Activation::Tanh, Activation::Linear]).unwrap();
        let r = gradient_check(&net, &[0.1, 0.2, 0.3], |y| (y.iter().sum(), vec![1.0; y.len()]), 1e-5)
            .unwrap();
        assert_eq!(r.max_rel(), 0.0);
        assert_eq!(r.checked, net.param_count() + 3);
    }

    #[test]
    fn floor_applies_to_tiny_values() {
        assert_eq!(relative_error(0.0, 1e-10), 1e-10 / REL_ERROR_FLOOR);
        assert!((relative_error(2.0, 1.0) - 0.5).abs() < 1e-15);
    }
}
