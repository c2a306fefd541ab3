use ndarray::Zip;
use serde::{Deserialize, Serialize};

use super::{GradBuffer, MlpNet, NetError};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AdamConfig {
    pub lr: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub eps: f64,
}

impl AdamConfig {
    pub fn with_lr(lr: f64) -> Self {
        Self {
            lr,
            ..Self::default()
        }
    }
}

impl Default for AdamConfig {
    fn default() -> Self {
        Self {
            lr: 1e-3,
            beta1: 0.9,
            beta2: 0.999,
            eps: 1e-8,
        }
    }
}

/// Moment estimates for one network.
#[derive(Debug, Clone, PartialEq)]
pub struct AdamState {
    pub config: AdamConfig,
    pub step: u64,
    m: GradBuffer,
    v: GradBuffer,
}

impl AdamState {
    pub fn new(net: &MlpNet, config: AdamConfig) -> Self {
        Self {
            config,
            step: 0,
            m: GradBuffer::zeros_like(net),
            v: GradBuffer::zeros_like(net),
        }
    }
}

/// One Adam descent step on `net` using gradients `grads` (of a loss to minimize).
pub fn adam_step(net: &mut MlpNet, grads: &GradBuffer, state: &mut AdamState) -> Result<(), NetError> {
    if !grads.matches(net) || !state.m.matches(net) {
        return Err(NetError::ShapeMismatch);
    }
    state.step += 1;
    let AdamConfig {
        lr,
        beta1,
        beta2,
        eps,
    } = state.config;
    let t = state.step as i32;
    let c1 = 1.0 - beta1.powi(t);
    let c2 = 1.0 - beta2.powi(t);

    let update = |p: &mut f64, m: &mut f64, v: &mut f64, g: f64| {
        *m = beta1 * *m + (1.0 - beta1) * g;
        *v = beta2 * *v + (1.0 - beta2) * g * g;
        let m_hat = *m / c1;
        let v_hat = *v / c2;
        *p -= lr * m_hat / (v_hat.sqrt() + eps);
    };

    for (i, layer) in net.layers_mut().iter_mut().enumerate() {
        Zip::from(&mut layer.weights)
            .and(&mut state.m.weights[i])
            .and(&mut state.v.weights[i])
            .and(&grads.weights[i])
            .for_each(|p, m, v, &g| update(p, m, v, g));
        Zip::from(&mut layer.bias)
            .and(&mut state.m.biases[i])
            .and(&mut state.v.biases[i])
            .and(&grads.biases[i])
            .for_each(|p, m, v, &g| update(p, m, v, g));
    }
    Ok(())
}
