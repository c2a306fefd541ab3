use serde::{Deserialize, Serialize};

use crate::aprg::RunRngs;
use crate::env::{self, Action, EnvConfig};
use crate::Error;

/// Shape of the sensing and actuation noise; [`NoiseProfile::apply`]
/// scales it uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseProfile {
    pub observation: [f64; 9],
    pub execution: [f64; 3],
}

impl Default for NoiseProfile {
    fn default() -> Self {
        Self {
            observation: [0.005, 0.005, 0.005, 0.05, 0.05, 0.05, 2.0, 2.0, 2.0],
            execution: [1.0, 1.0, 0.05],
        }
    }
}

impl NoiseProfile {
    pub fn apply(&self, env: &EnvConfig, scale: f64) -> EnvConfig {
        let mut out = env.clone();
        out.observation_noise = self.observation.map(|s| s * scale);
        out.execution_noise = self.execution.map(|s| s * scale);
        out
    }
}

/// RMS distance of the landing points of a fixed action from their mean.
/// Serves and execution noise come from the streams of `seed`.
pub fn landing_scatter(env: &EnvConfig, action: Action, episodes: usize, seed: u64) -> Result<f64, Error> {
    if episodes < 2 {
        return Err(Error::Config("landing scatter needs at least two episodes".into()));
    }
    let mut rngs = RunRngs::new(seed);
    let mut points = Vec::with_capacity(episodes);
    for e in 0..episodes {
        let ball = env::sample_serve(&mut rngs.serve, env)?;
        let out = env::step(&ball, action, &env.goal_for_episode(e), env, &mut rngs.execution)?;
        points.push((out.reward_params.achieved_x, out.reward_params.achieved_y));
    }
    let n = episodes as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let ms = points.iter().map(|p| (p.0 - mx).powi(2) + (p.1 - my).powi(2)).sum::<f64>() / n;
    Ok(ms.sqrt())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NoiseCalibration {
    pub scale: f64,
    /// Landing scatter reached at `scale`, m.
    pub rms: f64,
    pub env: EnvConfig,
}

/// Find the profile scale whose fixed-action landing scatter is
/// `target_rms`, by bracketing and bisection with common random numbers.
pub fn calibrate_noise(
    env: &EnvConfig,
    profile: &NoiseProfile,
    action: Action,
    target_rms: f64,
    episodes: usize,
    seed: u64,
) -> Result<NoiseCalibration, Error> {
    let scatter = |k: f64| landing_scatter(&profile.apply(env, k), action, episodes, seed);
    let floor = scatter(0.0)?;
    if floor >= target_rms {
        return Err(Error::Config(format!(
            "noise-free scatter {floor:.4} m already exceeds the target {target_rms:.4} m"
        )));
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    let mut hi_rms = scatter(hi)?;
    let mut doublings = 0;
    while hi_rms < target_rms {
        doublings += 1;
        if doublings > 20 {
            return Err(Error::Config(format!("no noise scale reaches {target_rms} m of scatter")));
        }
        lo = hi;
        hi *= 2.0;
        hi_rms = scatter(hi)?;
    }
    for _ in 0..40 {
        let mid = 0.5 * (lo + hi);
        if scatter(mid)? < target_rms {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(NoiseCalibration {
        scale: hi,
        rms: scatter(hi)?,
        env: profile.apply(env, hi),
    })
}
