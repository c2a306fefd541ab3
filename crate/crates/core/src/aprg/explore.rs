use rand::Rng;
use rand_distr::StandardNormal;

use super::networks::{GOAL_DIM, STATE_DIM};
use super::{Actor, AprgConfig};
use crate::env::Action;
use crate::Error;

/// Exploration policy.
///
/// Warm-up episodes perturb the pretested `base_action` with the large
/// `warmup_noise`; afterwards the actor's output is perturbed with
/// `explore_noise * noise_decay^(episode - warmup)`. Three normal draws are
/// consumed per call in either phase.
pub fn select_action<R: Rng + ?Sized>(
    actor: &Actor,
    observed_state: &[f64; STATE_DIM],
    goal: &[f64; GOAL_DIM],
    episode: usize,
    config: &AprgConfig,
    rng: &mut R,
) -> Result<Action, Error> {
    let (center, std) = if episode < config.warmup_episodes {
        (config.base_action, config.warmup_noise)
    } else {
        let k = (episode - config.warmup_episodes) as i32;
        let scale = config.noise_decay.powi(k);
        (actor.act(observed_state, goal)?, config.explore_noise.map(|s| s * scale))
    };
    let mut a = center.to_array();
    for (x, s) in a.iter_mut().zip(std) {
        let z: f64 = rng.sample(StandardNormal);
        *x += s * z;
    }
    Ok(Action::from_array(a))
}
