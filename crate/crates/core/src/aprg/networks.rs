use ndarray::{concatenate, s, Array2, ArrayView2, Axis};
use rand::Rng;

use super::{AprgConfig, Mode};
use crate::env::{Action, EnvConfig, Goal, Interval};
use crate::neuralnet::{Activation, MlpNet, Tape};
use crate::physics::BallState;
use crate::Error;

pub const STATE_DIM: usize = 9;
pub const GOAL_DIM: usize = 2;
pub const ACTION_DIM: usize = 3;

/// Maps raw states and goals onto `[-1, 1]` boxes.
#[derive(Debug, Clone, PartialEq)]
pub struct Normalizer {
    pub state_box: [Interval; STATE_DIM],
    pub goal_box: [Interval; GOAL_DIM],
}

impl Normalizer {
    pub fn from_env(env: &EnvConfig) -> Self {
        Self {
            state_box: env.state_box,
            goal_box: env.goal_box(),
        }
    }

    pub fn state(&self, s: &[f64; STATE_DIM]) -> [f64; STATE_DIM] {
        std::array::from_fn(|i| self.state_box[i].normalize(s[i]))
    }

    pub fn ball(&self, b: &BallState) -> [f64; STATE_DIM] {
        self.state(&b.to_array())
    }

    pub fn goal(&self, g: &Goal) -> [f64; GOAL_DIM] {
        [self.goal_box[0].normalize(g.x), self.goal_box[1].normalize(g.y)]
    }
}

/// How a critic output turns into a scalar reward.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RewardHead {
    /// Output is `(achieved_x, achieved_y, height)`;
    /// `R = -|g - (x, y)| - height_weight * h`.
    Parametrized { height_weight: f64 },
    /// Output is the reward itself.
    Scalar,
}

impl RewardHead {
    pub fn output_dim(self) -> usize {
        match self {
            RewardHead::Parametrized { .. } => 3,
            RewardHead::Scalar => 1,
        }
    }

    /// Reward and its gradient with respect to the critic output.
    pub fn reward_and_grad(self, q: &[f64], goal: &Goal) -> (f64, Vec<f64>) {
        match self {
            RewardHead::Parametrized { height_weight } => {
                let dx = goal.x - q[0];
                let dy = goal.y - q[1];
                let d = dx.hypot(dy);
                let r = -d - height_weight * q[2];
                // subgradient 0 at the kink
                let (gx, gy) = if d > 0.0 { (dx / d, dy / d) } else { (0.0, 0.0) };
                (r, vec![gx, gy, -height_weight])
            }
            RewardHead::Scalar => (q[0], vec![1.0]),
        }
    }

    pub fn reward(self, q: &[f64], goal: &Goal) -> f64 {
        self.reward_and_grad(q, goal).0
    }
}

/// A differentiable model of the reward parameters, evaluated on normalized
/// states and actions. Implemented by [`Critic`]; tests substitute analytic
/// stand-ins.
pub trait RewardCritic {
    type Tape;

    fn head(&self) -> RewardHead;

    /// Outputs in physical units, one row per sample.
    fn forward(&self, states: ArrayView2<f64>, actions: ArrayView2<f64>)
        -> Result<(Array2<f64>, Self::Tape), Error>;

    /// Gradient of `sum_i <output_grad_i, q_i>` with respect to the actions.
    fn action_grad(&self, tape: &Self::Tape, output_grad: ArrayView2<f64>) -> Result<Array2<f64>, Error>;

    /// Critic-estimated reward of one normalized state/action pair.
    fn reward(&self, state: &[f64], action: &[f64], goal: &Goal) -> Result<f64, Error> {
        let s = ArrayView2::from_shape((1, state.len()), state).expect("contiguous");
        let a = ArrayView2::from_shape((1, action.len()), action).expect("contiguous");
        let (q, _) = self.forward(s, a)?;
        Ok(self.head().reward(q.row(0).as_slice().expect("row-major"), goal))
    }
}

/// Network predicting reward parameters (or the reward) from
/// `[state | action]`, both normalized.
///
/// The network output lives in normalized units; `output_box` maps it back
/// to meters.
#[derive(Debug, Clone, PartialEq)]
pub struct Critic {
    pub net: MlpNet,
    pub head: RewardHead,
    pub output_box: Vec<Interval>,
}

pub type CriticTape = Tape;

impl Critic {
    pub fn new<R: Rng + ?Sized>(config: &AprgConfig, env: &EnvConfig, rng: &mut R) -> Result<Self, Error> {
        let head = match config.mode {
            Mode::Aprg | Mode::Prg => RewardHead::Parametrized {
                height_weight: env.height_weight,
            },
            Mode::ScalarCritic => RewardHead::Scalar,
        };
        let mut sizes = vec![STATE_DIM + ACTION_DIM];
        sizes.extend(&config.hidden);
        sizes.push(head.output_dim());
        let mut acts = vec![Activation::Relu; config.hidden.len()];
        acts.push(Activation::Linear);
        let net = MlpNet::new(&sizes, &acts, rng)?;
        Self::from_net(net, head, env)
    }

    pub fn from_net(net: MlpNet, head: RewardHead, env: &EnvConfig) -> Result<Self, Error> {
        if net.input_dim() != STATE_DIM + ACTION_DIM || net.output_dim() != head.output_dim() {
            return Err(Error::Config(format!(
                "critic network {:?} does not fit head {head:?}",
                net.sizes()
            )));
        }
        let output_box = match head {
            RewardHead::Parametrized { .. } => {
                let [gx, gy] = env.goal_box();
                vec![gx, gy, Interval::new(0.0, 0.5)]
            }
            RewardHead::Scalar => vec![Interval::new(-1.0, 1.0)],
        };
        Ok(Self {
            net,
            head,
            output_box,
        })
    }

    /// Targets for training, in the network's normalized output units.
    pub fn normalize_target(&self, target: &[f64]) -> Vec<f64> {
        target
            .iter()
            .zip(&self.output_box)
            .map(|(&t, iv)| iv.normalize(t))
            .collect()
    }

    fn denormalize_row(&self, row: &mut [f64]) {
        for (v, iv) in row.iter_mut().zip(&self.output_box) {
            *v = iv.center() + 0.5 * iv.width() * *v;
        }
    }

    pub(crate) fn inputs(states: ArrayView2<f64>, actions: ArrayView2<f64>) -> Result<Array2<f64>, Error> {
        concatenate(Axis(1), &[states.view(), actions.view()])
            .map_err(|e| Error::Config(format!("critic input shapes: {e}")))
    }
}

impl RewardCritic for Critic {
    type Tape = Tape;

    fn head(&self) -> RewardHead {
        self.head
    }

    fn forward(&self, states: ArrayView2<f64>, actions: ArrayView2<f64>) -> Result<(Array2<f64>, Tape), Error> {
        let x = Self::inputs(states, actions)?;
        let (mut y, tape) = self.net.forward_batch(x.view())?;
        for mut row in y.rows_mut() {
            self.denormalize_row(row.as_slice_mut().expect("standard layout"));
        }
        Ok((y, tape))
    }

    fn action_grad(&self, tape: &Tape, output_grad: ArrayView2<f64>) -> Result<Array2<f64>, Error> {
        let mut g = output_grad.to_owned();
        for (mut col, iv) in g.columns_mut().into_iter().zip(&self.output_box) {
            col *= 0.5 * iv.width();
        }
        let gx = self.net.backward_input(tape, g.view())?;
        Ok(gx.slice(s![.., STATE_DIM..]).to_owned())
    }
}

/// Deterministic policy on `[state | goal]`, both normalized; the Tanh head
/// is the normalized action.
#[derive(Debug, Clone, PartialEq)]
pub struct Actor {
    pub net: MlpNet,
}

impl Actor {
    pub fn new<R: Rng + ?Sized>(config: &AprgConfig, rng: &mut R) -> Result<Self, Error> {
        let mut sizes = vec![STATE_DIM + GOAL_DIM];
        sizes.extend(&config.hidden);
        sizes.push(ACTION_DIM);
        let mut acts = vec![Activation::Relu; config.hidden.len()];
        acts.push(Activation::Tanh);
        Self::from_net(MlpNet::new(&sizes, &acts, rng)?)
    }

    pub fn from_net(net: MlpNet) -> Result<Self, Error> {
        if net.input_dim() != STATE_DIM + GOAL_DIM || net.output_dim() != ACTION_DIM {
            return Err(Error::Config(format!("actor network {:?} has the wrong shape", net.sizes())));
        }
        Ok(Self { net })
    }

    pub fn inputs(state: &[f64; STATE_DIM], goal: &[f64; GOAL_DIM]) -> [f64; STATE_DIM + GOAL_DIM] {
        std::array::from_fn(|i| if i < STATE_DIM { state[i] } else { goal[i - STATE_DIM] })
    }

    /// Normalized action for normalized inputs.
    pub fn act_normalized(&self, state: &[f64; STATE_DIM], goal: &[f64; GOAL_DIM]) -> Result<[f64; ACTION_DIM], Error> {
        let y = self.net.predict(&Self::inputs(state, goal))?;
        Ok([y[0], y[1], y[2]])
    }

    pub fn act(&self, state: &[f64; STATE_DIM], goal: &[f64; GOAL_DIM]) -> Result<Action, Error> {
        Ok(Action::from_normalized(self.act_normalized(state, goal)?))
    }
}
