use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::aprg::{evaluate_policy, Actor, EvalRecord};
use crate::env::EnvConfig;
use crate::neuralnet::load_checkpoint;
use crate::Error;

/// One row of an evaluation log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalRow {
    pub episode: usize,
    pub goal_x: f64,
    pub goal_y: f64,
    pub alpha: f64,
    pub beta: f64,
    pub racket_vx: f64,
    pub achieved_x: f64,
    pub achieved_y: f64,
    pub height: f64,
    pub reward: f64,
    pub goal_error: f64,
    pub event: String,
}

impl EvalRow {
    pub fn from_record(episode: usize, r: &EvalRecord) -> Self {
        let [alpha, beta, racket_vx] = r.action.to_array();
        let p = r.outcome.reward_params;
        Self {
            episode,
            goal_x: r.goal.x,
            goal_y: r.goal.y,
            alpha,
            beta,
            racket_vx,
            achieved_x: p.achieved_x,
            achieved_y: p.achieved_y,
            height: p.height,
            reward: r.outcome.reward,
            goal_error: crate::env::goal_error(&p, &r.goal),
            event: r.outcome.terminal_event.to_string(),
        }
    }
}

/// Load an actor checkpoint and play `episodes` noise-free serves with it.
pub fn evaluate_checkpoint(
    actor_path: &Path,
    env: &EnvConfig,
    episodes: usize,
    seed: u64,
) -> Result<Vec<EvalRow>, Error> {
    let actor = Actor::from_net(load_checkpoint(actor_path)?)?;
    let records = evaluate_policy(&actor, env, episodes, seed)?;
    Ok(records.iter().enumerate().map(|(i, r)| EvalRow::from_record(i, r)).collect())
}
