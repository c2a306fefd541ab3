use std::sync::atomic::{AtomicU64, Ordering};

use ndarray::{Array1, Array2, ArrayView2, Axis, Zip};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::NetError;

static NEXT_NET_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_NET_ID.fetch_add(1, Ordering::Relaxed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Tanh,
    Relu,
    Linear,
}

impl Activation {
    fn apply(self, z: &mut Array2<f64>) {
        match self {
            Activation::Tanh => z.mapv_inplace(f64::tanh),
            Activation::Relu => z.mapv_inplace(|v| v.max(0.0)),
            Activation::Linear => {}
        }
    }

    /// Multiply `grad` in place by the activation derivative, expressed in
    /// terms of the activation output `y`.
    fn backprop(self, y: &Array2<f64>, grad: &mut Array2<f64>) {
        match self {
            Activation::Tanh => Zip::from(grad).and(y).for_each(|g, &y| *g *= 1.0 - y * y),
            Activation::Relu => Zip::from(grad).and(y).for_each(|g, &y| {
                if y <= 0.0 {
                    *g = 0.0
                }
            }),
            Activation::Linear => {}
        }
    }
}

/// Dense layer `y = act(x W + b)`, `W` stored `(fan_in, fan_out)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Layer {
    pub weights: Array2<f64>,
    pub bias: Array1<f64>,
    pub activation: Activation,
}

impl Layer {
    pub fn fan_in(&self) -> usize {
        self.weights.nrows()
    }

    pub fn fan_out(&self) -> usize {
        self.weights.ncols()
    }
}

/// Feed-forward network.
///
/// Every parameter mutation bumps an internal version so that tapes recorded
/// before the change are rejected by [`MlpNet::backward`].
#[derive(Debug)]
pub struct MlpNet {
    layers: Vec<Layer>,
    id: u64,
    version: u64,
}

impl Clone for MlpNet {
    fn clone(&self) -> Self {
        Self {
            layers: self.layers.clone(),
            id: fresh_id(),
            version: 0,
        }
    }
}

impl PartialEq for MlpNet {
    fn eq(&self, other: &Self) -> bool {
        self.layers == other.layers
    }
}

/// Activations recorded by a forward pass.
#[derive(Debug, Clone)]
pub struct Tape {
    net_id: u64,
    version: u64,
    /// `outputs[0]` is the input batch, `outputs[i + 1]` the output of layer `i`.
    outputs: Vec<Array2<f64>>,
}

impl Tape {
    pub fn output(&self) -> &Array2<f64> {
        self.outputs.last().expect("tape always holds the input")
    }

    pub fn batch_size(&self) -> usize {
        self.outputs[0].nrows()
    }

    /// Sign pattern of all ReLU units (true = active).
    pub fn relu_pattern(&self, net: &MlpNet) -> Vec<bool> {
        net.layers
            .iter()
            .zip(&self.outputs[1..])
            .filter(|(l, _)| l.activation == Activation::Relu)
            .flat_map(|(_, y)| y.iter().map(|&v| v > 0.0).collect::<Vec<_>>())
            .collect()
    }
}

/// Parameter gradients, shaped like the network.
#[derive(Debug, Clone, PartialEq)]
pub struct GradBuffer {
    pub weights: Vec<Array2<f64>>,
    pub biases: Vec<Array1<f64>>,
}

impl GradBuffer {
    pub fn zeros_like(net: &MlpNet) -> Self {
        Self {
            weights: net.layers.iter().map(|l| Array2::zeros(l.weights.raw_dim())).collect(),
            biases: net.layers.iter().map(|l| Array1::zeros(l.bias.raw_dim())).collect(),
        }
    }

    pub fn matches(&self, net: &MlpNet) -> bool {
        self.weights.len() == net.layers.len()
            && self.biases.len() == net.layers.len()
            && net.layers.iter().enumerate().all(|(i, l)| {
                self.weights[i].dim() == l.weights.dim() && self.biases[i].dim() == l.bias.dim()
            })
    }

    pub fn scale(&mut self, s: f64) {
        self.weights.iter_mut().for_each(|w| *w *= s);
        self.biases.iter_mut().for_each(|b| *b *= s);
    }

    /// Gradients flattened in parameter order (per layer: weights row-major, then bias).
    pub fn to_flat(&self) -> Vec<f64> {
        self.weights
            .iter()
            .zip(&self.biases)
            .flat_map(|(w, b)| w.iter().chain(b.iter()).copied().collect::<Vec<_>>())
            .collect()
    }
}

impl MlpNet {
    /// Xavier-uniform weights, zero biases.
    ///
    /// `sizes` lists the layer widths including input and output;
    /// `activations` has one entry per layer (`sizes.len() - 1`).
    pub fn new<R: Rng + ?Sized>(
        sizes: &[usize],
        activations: &[Activation],
        rng: &mut R,
    ) -> Result<Self, NetError> {
        Self::check_arch(sizes, activations)?;
        let layers = sizes
            .windows(2)
            .zip(activations)
            .map(|(w, &activation)| {
                let (fan_in, fan_out) = (w[0], w[1]);
                let limit = xavier_limit(fan_in, fan_out);
                let weights =
                    Array2::from_shape_fn((fan_in, fan_out), |_| rng.random_range(-limit..=limit));
                Layer {
                    weights,
                    bias: Array1::zeros(fan_out),
                    activation,
                }
            })
            .collect();
        Ok(Self::from_layers(layers))
    }

    /// All parameters zero.
    pub fn zeros(sizes: &[usize], activations: &[Activation]) -> Result<Self, NetError> {
        Self::check_arch(sizes, activations)?;
        let layers = sizes
            .windows(2)
            .zip(activations)
            .map(|(w, &activation)| Layer {
                weights: Array2::zeros((w[0], w[1])),
                bias: Array1::zeros(w[1]),
                activation,
            })
            .collect();
        Ok(Self::from_layers(layers))
    }

    pub fn from_layers(layers: Vec<Layer>) -> Self {
        Self {
            layers,
            id: fresh_id(),
            version: 0,
        }
    }

    fn check_arch(sizes: &[usize], activations: &[Activation]) -> Result<(), NetError> {
        if sizes.len() < 2 {
            return Err(NetError::InvalidArchitecture("need at least input and output sizes".into()));
        }
        if activations.len() != sizes.len() - 1 {
            return Err(NetError::InvalidArchitecture(format!(
                "{} layers but {} activations",
                sizes.len() - 1,
                activations.len()
            )));
        }
        if sizes.contains(&0) {
            return Err(NetError::InvalidArchitecture("zero-width layer".into()));
        }
        Ok(())
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// Mutable access to the layers; invalidates outstanding tapes.
    pub fn layers_mut(&mut self) -> &mut [Layer] {
        self.version += 1;
        &mut self.layers
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![self.input_dim()];
        s.extend(self.layers.iter().map(Layer::fan_out));
        s
    }

    pub fn activations(&self) -> Vec<Activation> {
        self.layers.iter().map(|l| l.activation).collect()
    }

    pub fn input_dim(&self) -> usize {
        self.layers[0].fan_in()
    }

    pub fn output_dim(&self) -> usize {
        self.layers.last().map_or(0, Layer::fan_out)
    }

    pub fn param_count(&self) -> usize {
        self.layers.iter().map(|l| l.weights.len() + l.bias.len()).sum()
    }

    /// Parameters flattened (per layer: weights row-major, then bias).
    pub fn params_flat(&self) -> Vec<f64> {
        self.layers
            .iter()
            .flat_map(|l| l.weights.iter().chain(l.bias.iter()).copied().collect::<Vec<_>>())
            .collect()
    }

    pub fn set_params_flat(&mut self, params: &[f64]) -> Result<(), NetError> {
        if params.len() != self.param_count() {
            return Err(NetError::DimensionMismatch {
                expected: self.param_count(),
                got: params.len(),
            });
        }
        let mut it = params.iter().copied();
        for l in self.layers_mut() {
            l.weights.iter_mut().chain(l.bias.iter_mut()).for_each(|p| {
                *p = it.next().expect("length checked");
            });
        }
        Ok(())
    }

    /// Single-sample forward pass.
    pub fn forward(&self, input: &[f64]) -> Result<(Vec<f64>, Tape), NetError> {
        let x = ArrayView2::from_shape((1, input.len()), input).expect("contiguous slice");
        let (y, tape) = self.forward_batch(x)?;
        Ok((y.into_raw_vec_and_offset().0, tape))
    }

    /// Batched forward pass on a `(batch, input_dim)` matrix.
    pub fn forward_batch(&self, input: ArrayView2<f64>) -> Result<(Array2<f64>, Tape), NetError> {
        self.check_input(input.ncols())?;
        let mut outputs = Vec::with_capacity(self.layers.len() + 1);
        outputs.push(input.to_owned());
        for layer in &self.layers {
            let x = outputs.last().expect("non-empty");
            let mut z = x.dot(&layer.weights);
            z += &layer.bias;
            layer.activation.apply(&mut z);
            outputs.push(z);
        }
        let y = outputs.last().expect("non-empty").clone();
        Ok((
            y,
            Tape {
                net_id: self.id,
                version: self.version,
                outputs,
            },
        ))
    }

    /// Batched forward pass without recording a tape.
    pub fn predict_batch(&self, input: ArrayView2<f64>) -> Result<Array2<f64>, NetError> {
        self.check_input(input.ncols())?;
        let mut x: Option<Array2<f64>> = None;
        for layer in &self.layers {
            let mut z = match &x {
                None => input.dot(&layer.weights),
                Some(prev) => prev.dot(&layer.weights),
            };
            z += &layer.bias;
            layer.activation.apply(&mut z);
            x = Some(z);
        }
        Ok(x.expect("at least one layer"))
    }

    pub fn predict(&self, input: &[f64]) -> Result<Vec<f64>, NetError> {
        let x = ArrayView2::from_shape((1, input.len()), input).expect("contiguous slice");
        Ok(self.predict_batch(x)?.into_raw_vec_and_offset().0)
    }

    /// Reverse pass. `output_grad` is dL/dy per sample; parameter gradients
    /// are summed over the batch.
    pub fn backward(
        &self,
        tape: &Tape,
        output_grad: ArrayView2<f64>,
    ) -> Result<(Array2<f64>, GradBuffer), NetError> {
        let mut grads = GradBuffer::zeros_like(self);
        let input_grad = self.backprop(tape, output_grad, Some(&mut grads))?;
        Ok((input_grad, grads))
    }

    /// Reverse pass for the input gradient only.
    pub fn backward_input(&self, tape: &Tape, output_grad: ArrayView2<f64>) -> Result<Array2<f64>, NetError> {
        self.backprop(tape, output_grad, None)
    }

    fn backprop(
        &self,
        tape: &Tape,
        output_grad: ArrayView2<f64>,
        mut grads: Option<&mut GradBuffer>,
    ) -> Result<Array2<f64>, NetError> {
        if tape.net_id != self.id || tape.version != self.version {
            return Err(NetError::StaleTape);
        }
        if output_grad.dim() != tape.output().dim() {
            return Err(NetError::DimensionMismatch {
                expected: tape.output().len(),
                got: output_grad.len(),
            });
        }
        let mut delta = output_grad.to_owned();
        for (i, layer) in self.layers.iter().enumerate().rev() {
            layer.activation.backprop(&tape.outputs[i + 1], &mut delta);
            if let Some(g) = grads.as_deref_mut() {
                g.weights[i] = tape.outputs[i].t().dot(&delta);
                g.biases[i] = delta.sum_axis(Axis(0));
            }
            delta = delta.dot(&layer.weights.t());
        }
        Ok(delta)
    }

    fn check_input(&self, got: usize) -> Result<(), NetError> {
        if got != self.input_dim() {
            return Err(NetError::DimensionMismatch {
                expected: self.input_dim(),
                got,
            });
        }
        Ok(())
    }
}

pub(crate) fn xavier_limit(fan_in: usize, fan_out: usize) -> f64 {
    (6.0 / (fan_in + fan_out) as f64).sqrt()
}
