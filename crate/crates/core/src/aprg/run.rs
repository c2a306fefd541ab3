use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{
    post_optimize_action, select_action, train_actor_batch, train_critic_batch, Actor, AprgConfig,
    Critic, EpisodeRecord, Mode, Normalizer, ReplayBuffer,
};
use crate::env::{self, Action, EnvConfig, Goal, Outcome, RewardParams};
use crate::neuralnet::AdamState;
use crate::physics::BallState;
use crate::Error;

/// Independent random streams of one training run, all derived from a single
/// seed. Keeping them separate means a change in one consumer (say, the
/// critic's output width) never shifts the serves or the exploration noise.
#[derive(Debug, Clone)]
pub struct RunRngs {
    pub serve: ChaCha8Rng,
    pub observation: ChaCha8Rng,
    pub execution: ChaCha8Rng,
    pub exploration: ChaCha8Rng,
    pub actor_init: ChaCha8Rng,
    pub critic_init: ChaCha8Rng,
    pub replay: ChaCha8Rng,
}

impl RunRngs {
    pub fn new(seed: u64) -> Self {
        let stream = |k: u64| {
            let mut r = ChaCha8Rng::seed_from_u64(seed);
            r.set_stream(k);
            r
        };
        Self {
            serve: stream(0),
            observation: stream(1),
            execution: stream(2),
            exploration: stream(3),
            actor_init: stream(4),
            critic_init: stream(5),
            replay: stream(6),
        }
    }
}

/// Everything known about one played episode; one row of the episode log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeLog {
    pub episode: usize,
    pub warmup: bool,
    pub goal_x: f64,
    pub goal_y: f64,
    pub obs_px: f64,
    pub obs_py: f64,
    pub obs_pz: f64,
    pub obs_vx: f64,
    pub obs_vy: f64,
    pub obs_vz: f64,
    pub obs_wx: f64,
    pub obs_wy: f64,
    pub obs_wz: f64,
    /// Policy output plus exploration noise.
    pub proposed_alpha: f64,
    pub proposed_beta: f64,
    pub proposed_vx: f64,
    /// Commanded action (after post-optimization, if any).
    pub alpha: f64,
    pub beta: f64,
    pub racket_vx: f64,
    /// Action the racket actually performed (after execution noise).
    pub executed_alpha: f64,
    pub executed_beta: f64,
    pub executed_vx: f64,
    pub achieved_x: f64,
    pub achieved_y: f64,
    pub height: f64,
    pub reward: f64,
    pub goal_error: f64,
    pub event: String,
}

impl EpisodeLog {
    fn new(
        episode: usize,
        warmup: bool,
        observed: &BallState,
        goal: Goal,
        proposed: Action,
        action: Action,
        outcome: &Outcome,
    ) -> Self {
        let o = observed.to_array();
        let [pa, pb, pv] = proposed.to_array();
        let [a, b, v] = action.to_array();
        let [ea, eb, ev] = outcome.executed_action.to_array();
        let rp = outcome.reward_params;
        Self {
            episode,
            warmup,
            goal_x: goal.x,
            goal_y: goal.y,
            obs_px: o[0],
            obs_py: o[1],
            obs_pz: o[2],
            obs_vx: o[3],
            obs_vy: o[4],
            obs_vz: o[5],
            obs_wx: o[6],
            obs_wy: o[7],
            obs_wz: o[8],
            proposed_alpha: pa,
            proposed_beta: pb,
            proposed_vx: pv,
            alpha: a,
            beta: b,
            racket_vx: v,
            executed_alpha: ea,
            executed_beta: eb,
            executed_vx: ev,
            achieved_x: rp.achieved_x,
            achieved_y: rp.achieved_y,
            height: rp.height,
            reward: outcome.reward,
            goal_error: env::goal_error(&rp, &goal),
            event: outcome.terminal_event.to_string(),
        }
    }

    pub fn observed_state(&self) -> [f64; 9] {
        [
            self.obs_px, self.obs_py, self.obs_pz, self.obs_vx, self.obs_vy, self.obs_vz, self.obs_wx,
            self.obs_wy, self.obs_wz,
        ]
    }

    pub fn goal(&self) -> Goal {
        Goal::new(self.goal_x, self.goal_y)
    }

    pub fn action(&self) -> Action {
        Action::new(self.alpha, self.beta, self.racket_vx)
    }

    pub fn proposed_action(&self) -> Action {
        Action::new(self.proposed_alpha, self.proposed_beta, self.proposed_vx)
    }

    pub fn reward_params(&self) -> RewardParams {
        RewardParams {
            achieved_x: self.achieved_x,
            achieved_y: self.achieved_y,
            height: self.height,
        }
    }
}

/// Receives one log row per episode as training proceeds.
pub trait MetricsSink {
    fn record(&mut self, log: &EpisodeLog) -> Result<(), Error>;
}

impl MetricsSink for Vec<EpisodeLog> {
    fn record(&mut self, log: &EpisodeLog) -> Result<(), Error> {
        self.push(log.clone());
        Ok(())
    }
}

/// Discards everything.
impl MetricsSink for () {
    fn record(&mut self, _log: &EpisodeLog) -> Result<(), Error> {
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct TrainingResult {
    pub actor: Actor,
    pub critic: Critic,
    pub log: Vec<EpisodeLog>,
    pub buffer: ReplayBuffer,
}

/// Train from scratch for `config.total_episodes` episodes.
///
/// Per episode: draw a serve, observe it, pick an action (warm-up or
/// policy exploration), post-optimize it when running [`Mode::Aprg`] past
/// warm-up, play it, store it, and, once warm-up is over, run
/// `train_steps` critic+actor updates on minibatches drawn from the buffer
/// (the same minibatch feeds both updates).
pub fn run_training<S: MetricsSink + ?Sized>(
    env_cfg: &EnvConfig,
    config: &AprgConfig,
    seed: u64,
    sink: &mut S,
) -> Result<TrainingResult, Error> {
    env_cfg.validate()?;
    config.validate()?;
    let mut rngs = RunRngs::new(seed);
    let norm = Normalizer::from_env(env_cfg);

    let mut actor = Actor::new(config, &mut rngs.actor_init)?;
    let mut critic = Critic::new(config, env_cfg, &mut rngs.critic_init)?;
    let mut actor_opt = AdamState::new(&actor.net, config.actor_optim);
    let mut critic_opt = AdamState::new(&critic.net, config.critic_optim);
    let mut buffer = ReplayBuffer::new();
    let mut log = Vec::with_capacity(config.total_episodes);

    for episode in 0..config.total_episodes {
        let warmup = episode < config.warmup_episodes;
        let ball = env::sample_serve(&mut rngs.serve, env_cfg)?;
        let observed = env::observe(&ball, env_cfg, &mut rngs.observation);
        let goal = env_cfg.goal_for_episode(episode);
        let s_n = norm.ball(&observed);
        let g_n = norm.goal(&goal);

        let proposed = select_action(&actor, &s_n, &g_n, episode, config, &mut rngs.exploration)?;
        let action = if config.mode == Mode::Aprg && !warmup {
            post_optimize_action(&critic, &s_n, proposed, &goal, config)?
        } else {
            proposed
        };

        let outcome = env::step(&ball, action, &goal, env_cfg, &mut rngs.execution)?;
        buffer.push(EpisodeRecord {
            observed_state: observed.to_array(),
            goal,
            action,
            reward_params: outcome.reward_params,
            reward: outcome.reward,
        });
        let row = EpisodeLog::new(episode, warmup, &observed, goal, proposed, action, &outcome);
        sink.record(&row)?;
        log.push(row);

        if !warmup {
            for _ in 0..config.train_steps {
                let batch = buffer.sample(&mut rngs.replay, config.batch_size);
                train_critic_batch(&mut critic, &batch, &norm, &mut critic_opt)?;
                train_actor_batch(&mut actor, &critic, &batch, &norm, &mut actor_opt)?;
            }
        }
    }

    Ok(TrainingResult {
        actor,
        critic,
        log,
        buffer,
    })
}

/// One greedy evaluation episode.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalRecord {
    pub ball: BallState,
    pub goal: Goal,
    pub action: Action,
    pub outcome: Outcome,
}

/// Play `episodes` serves with the actor's noise-free output (no
/// exploration, no post-optimization) in a noise-free copy of `env_cfg`.
pub fn evaluate_policy(
    actor: &Actor,
    env_cfg: &EnvConfig,
    episodes: usize,
    seed: u64,
) -> Result<Vec<EvalRecord>, Error> {
    let env_cfg = env_cfg.noiseless();
    env_cfg.validate()?;
    let norm = Normalizer::from_env(&env_cfg);
    let mut rngs = RunRngs::new(seed);
    (0..episodes)
        .map(|episode| {
            let ball = env::sample_serve(&mut rngs.serve, &env_cfg)?;
            let goal = env_cfg.goal_for_episode(episode);
            let action = actor.act(&norm.ball(&ball), &norm.goal(&goal))?;
            let outcome = env::step(&ball, action, &goal, &env_cfg, &mut rngs.execution)?;
            Ok(EvalRecord {
                ball,
                goal,
                action,
                outcome,
            })
        })
        .collect()
}
