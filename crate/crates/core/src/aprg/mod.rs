//! The one-step actor-critic agent.
//!
//! The critic does not predict the reward. It predicts the reward
//! *parameters* (achieved landing point and mid-flight height) from the ball
//! state and the action; the reward is then computed from those parameters
//! and the desired goal. The actor is trained by ascending the gradient of
//! that composition, and in the full method every executed action is further
//! refined by a few projected gradient-ascent steps on the same composition.
//!
//! Episodes are a single transition, so there is no bootstrapping, no
//! discount and no target network.
//!
//! [`Mode`] switches between the full method ([`Mode::Aprg`]), the same
//! without action post-optimization ([`Mode::Prg`]) and a conventional
//! scalar-reward critic ([`Mode::ScalarCritic`]).

mod buffer;
mod explore;
mod networks;
mod postopt;
mod run;
mod train;

use serde::{Deserialize, Serialize};

use crate::env::Action;
use crate::neuralnet::AdamConfig;

pub use buffer::{EpisodeRecord, ReplayBuffer};
pub use explore::select_action;
pub use networks::{Actor, Critic, CriticTape, Normalizer, RewardCritic, RewardHead};
pub use postopt::post_optimize_action;
pub use run::{evaluate_policy, run_training, EpisodeLog, EvalRecord, MetricsSink, RunRngs, TrainingResult};
pub use train::{actor_loss_and_grad, critic_loss_and_grad, train_actor_batch, train_critic_batch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    /// Parametrized-reward critic plus action post-optimization.
    #[serde(rename = "aprg")]
    Aprg,
    /// Parametrized-reward critic, no post-optimization.
    #[serde(rename = "prg")]
    Prg,
    /// Critic regresses the scalar reward directly.
    #[serde(rename = "scalar")]
    ScalarCritic,
}

impl Mode {
    pub const ALL: [Mode; 3] = [Mode::Aprg, Mode::Prg, Mode::ScalarCritic];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Aprg => "aprg",
            Mode::Prg => "prg",
            Mode::ScalarCritic => "scalar",
        }
    }
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "aprg" => Ok(Mode::Aprg),
            "prg" => Ok(Mode::Prg),
            "scalar" | "scalarcritic" | "scalar-critic" => Ok(Mode::ScalarCritic),
            other => Err(crate::Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AprgConfig {
    pub mode: Mode,
    pub warmup_episodes: usize,
    pub total_episodes: usize,
    /// Gradient steps per episode once warm-up is over.
    pub train_steps: usize,
    /// Minibatch size, sampled with replacement.
    pub batch_size: usize,
    /// Pretested action explored around during warm-up.
    pub base_action: Action,
    /// Exploration std devs during warm-up (deg, deg, m/s).
    pub warmup_noise: [f64; 3],
    /// Exploration std devs right after warm-up.
    pub explore_noise: [f64; 3],
    /// Per-episode multiplicative decay of `explore_noise`.
    pub noise_decay: f64,
    /// Post-optimization ascent steps.
    pub post_opt_steps: usize,
    /// Initial post-optimization step size, normalized action units.
    pub post_opt_step_size: f64,
    /// Step halvings tried before a post-optimization step is abandoned.
    pub post_opt_max_halvings: usize,
    pub critic_optim: AdamConfig,
    pub actor_optim: AdamConfig,
    /// Hidden layer widths shared by actor and critic.
    pub hidden: Vec<usize>,
}

impl Default for AprgConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Aprg,
            warmup_episodes: 30,
            total_episodes: 200,
            train_steps: 32,
            batch_size: 64,
            base_action: Action::new(10.0, 0.0, 1.0),
            warmup_noise: [6.0, 6.0, 0.4],
            explore_noise: [1.0, 1.0, 0.05],
            noise_decay: 0.99,
            post_opt_steps: 10,
            post_opt_step_size: 0.05,
            post_opt_max_halvings: 10,
            critic_optim: AdamConfig::with_lr(1e-3),
            actor_optim: AdamConfig::with_lr(1e-4),
            hidden: vec![64, 64],
        }
    }
}

impl AprgConfig {
    pub fn validate(&self) -> Result<(), crate::Error> {
        let bad = |m: String| Err(crate::Error::Config(m));
        if self.warmup_episodes > self.total_episodes {
            return bad(format!(
                "warmup_episodes ({}) exceeds total_episodes ({})",
                self.warmup_episodes, self.total_episodes
            ));
        }
        if self.total_episodes == 0 {
            return bad("total_episodes must be >= 1".into());
        }
        if self.train_steps > 0 && self.batch_size == 0 {
            return bad("batch_size must be positive when training".into());
        }
        let noise = self.warmup_noise.iter().chain(&self.explore_noise);
        if noise.clone().any(|s| !(*s >= 0.0)) {
            return bad("exploration std devs must be >= 0".into());
        }
        if !(self.noise_decay >= 0.0) || !(self.post_opt_step_size >= 0.0) {
            return bad("noise_decay and post_opt_step_size must be >= 0".into());
        }
        if self.hidden.contains(&0) {
            return bad("hidden layers must be non-empty".into());
        }
        for o in [&self.critic_optim, &self.actor_optim] {
            if !(o.lr >= 0.0) || !(0.0..1.0).contains(&o.beta1) || !(0.0..1.0).contains(&o.beta2) {
                return bad(format!("invalid optimizer settings {o:?}"));
            }
        }
        Ok(())
    }
}
