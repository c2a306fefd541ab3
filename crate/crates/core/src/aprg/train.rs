use ndarray::{Array2, ArrayView2};

use super::networks::{ACTION_DIM, GOAL_DIM, STATE_DIM};
use super::{Actor, Critic, EpisodeRecord, Normalizer, RewardCritic, RewardHead};
use crate::neuralnet::{adam_step, AdamState, GradBuffer};
use crate::Error;

fn state_matrix(batch: &[&EpisodeRecord], norm: &Normalizer) -> Array2<f64> {
    let mut m = Array2::zeros((batch.len(), STATE_DIM));
    for (mut row, r) in m.rows_mut().into_iter().zip(batch) {
        row.assign(&ndarray::aview1(&norm.state(&r.observed_state)));
    }
    m
}

fn critic_target(critic: &Critic, r: &EpisodeRecord) -> Vec<f64> {
    match critic.head {
        RewardHead::Parametrized { .. } => critic.normalize_target(&r.reward_params.to_array()),
        RewardHead::Scalar => critic.normalize_target(&[r.reward]),
    }
}

/// Mean squared error `(1/N) sum_i |t_i - Q(s_i, a_i)|^2` (targets in the
/// critic's normalized output units) and its parameter gradient.
pub fn critic_loss_and_grad(
    critic: &Critic,
    batch: &[&EpisodeRecord],
    norm: &Normalizer,
) -> Result<(f64, GradBuffer), Error> {
    if batch.is_empty() {
        return Err(Error::EmptyBatch("critic update needs a non-empty batch"));
    }
    let n = batch.len();
    let states = state_matrix(batch, norm);
    let mut actions = Array2::zeros((n, ACTION_DIM));
    for (mut row, r) in actions.rows_mut().into_iter().zip(batch) {
        row.assign(&ndarray::aview1(&r.action.to_normalized()));
    }
    let x = Critic::inputs(states.view(), actions.view())?;
    let (y, tape) = critic.net.forward_batch(x.view())?;

    let out = critic.net.output_dim();
    let mut dy = Array2::zeros((n, out));
    let mut loss = 0.0;
    for (i, r) in batch.iter().enumerate() {
        let t = critic_target(critic, r);
        for k in 0..out {
            let d = y[[i, k]] - t[k];
            loss += d * d;
            dy[[i, k]] = 2.0 * d / n as f64;
        }
    }
    let (_, grads) = critic.net.backward(&tape, dy.view())?;
    Ok((loss / n as f64, grads))
}

/// One Adam step on the critic regression loss. Returns the loss before the step.
pub fn train_critic_batch(
    critic: &mut Critic,
    batch: &[&EpisodeRecord],
    norm: &Normalizer,
    optim: &mut AdamState,
) -> Result<f64, Error> {
    let (loss, grads) = critic_loss_and_grad(critic, batch, norm)?;
    adam_step(&mut critic.net, &grads, optim)?;
    Ok(loss)
}

/// Actor loss `-(1/N) sum_i R(Q(s_i, mu(s_i, g_i)), g_i)` and its gradient
/// with respect to the actor parameters. The critic only supplies input
/// gradients.
pub fn actor_loss_and_grad<C: RewardCritic>(
    actor: &Actor,
    critic: &C,
    batch: &[&EpisodeRecord],
    norm: &Normalizer,
) -> Result<(f64, GradBuffer), Error> {
    if batch.is_empty() {
        return Err(Error::EmptyBatch("actor update needs a non-empty batch"));
    }
    let n = batch.len();
    let states = state_matrix(batch, norm);
    let mut inputs = Array2::zeros((n, STATE_DIM + GOAL_DIM));
    for (i, r) in batch.iter().enumerate() {
        let row = Actor::inputs(&norm.state(&r.observed_state), &norm.goal(&r.goal));
        inputs.row_mut(i).assign(&ndarray::aview1(&row));
    }
    let (actions, actor_tape) = actor.net.forward_batch(inputs.view())?;
    let (q, critic_tape) = critic.forward(states.view(), actions.view())?;

    let head = critic.head();
    let mut dq = Array2::zeros(q.raw_dim());
    let mut total = 0.0;
    for (i, r) in batch.iter().enumerate() {
        let (reward, g) = head.reward_and_grad(q.row(i).as_slice().expect("row-major"), &r.goal);
        total += reward;
        for (k, gk) in g.into_iter().enumerate() {
            dq[[i, k]] = -gk / n as f64;
        }
    }
    let da = critic.action_grad(&critic_tape, dq.view())?;
    let (_, grads) = actor.net.backward(&actor_tape, ArrayView2::from(&da))?;
    Ok((-total / n as f64, grads))
}

/// One Adam step ascending the critic-estimated reward. Returns the mean
/// estimated reward before the step.
pub fn train_actor_batch<C: RewardCritic>(
    actor: &mut Actor,
    critic: &C,
    batch: &[&EpisodeRecord],
    norm: &Normalizer,
    optim: &mut AdamState,
) -> Result<f64, Error> {
    let (loss, grads) = actor_loss_and_grad(actor, critic, batch, norm)?;
    adam_step(&mut actor.net, &grads, optim)?;
    Ok(-loss)
}
