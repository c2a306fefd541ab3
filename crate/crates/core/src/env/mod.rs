//! The one-step goal-conditioned return task.
//!
//! An episode is a single transition: the incoming ball is read at the
//! hitting plane, the agent picks racket parameters, the return flight is
//! simulated and the episode ends. The reward is
//!
//! ```text
//! r = -|g_d - g_a| - height_weight * h
//! ```
//!
//! with `g_a` the point where the return meets the table plane and `h` the
//! ball height halfway along the return.

mod scenario;
mod sim;
mod types;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::physics::{PhysicsError, PhysicsParams, TableGeometry};

pub use scenario::{preset, PRESET_NAMES};
pub use sim::{
    goal_error, observe, racket_pose_from_action, reward_from_params, sample_serve, step, Outcome,
    MAX_SERVE_TRIES,
};
pub use types::{Action, Goal, Interval, RewardParams, ACTION_HIGH, ACTION_LOW};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnvError {
    #[error("no valid serve after {tries} attempts; serve distribution is infeasible")]
    InfeasibleServe { tries: usize },
    #[error("unknown scenario {0:?}")]
    UnknownScenario(String),
    #[error("invalid environment config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Physics(#[from] PhysicsError),
}

/// Launch-state distribution for serves, each component uniform on its interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ServeDistribution {
    pub position: [Interval; 3],
    pub velocity: [Interval; 3],
    pub spin: [Interval; 3],
}

impl Default for ServeDistribution {
    fn default() -> Self {
        Self {
            position: [
                Interval::new(2.5, 2.7),
                Interval::new(-0.2, 0.2),
                Interval::new(0.25, 0.35),
            ],
            velocity: [
                Interval::new(-5.5, -4.0),
                Interval::new(-0.5, 0.5),
                Interval::new(1.0, 2.5),
            ],
            spin: [
                Interval::point(0.0),
                Interval::new(-30.0, 30.0),
                Interval::point(0.0),
            ],
        }
    }
}

impl ServeDistribution {
    /// Every component fixed at its interval center.
    pub fn degenerate(&self) -> Self {
        let fix = |a: [Interval; 3]| a.map(|i| Interval::point(i.center()));
        Self {
            position: fix(self.position),
            velocity: fix(self.velocity),
            spin: fix(self.spin),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnvConfig {
    pub serve: ServeDistribution,
    /// x coordinate of the hitting plane, m.
    pub hit_plane_x: f64,
    /// Weight of the height penalty in the reward.
    pub height_weight: f64,
    /// Per-dimension std devs of the observation noise (position m,
    /// velocity m/s, spin rad/s).
    pub observation_noise: [f64; 9],
    /// Std devs of the action execution noise (deg, deg, m/s).
    pub execution_noise: [f64; 3],
    pub physics: PhysicsParams,
    pub geometry: TableGeometry,
    /// Integration step, s.
    pub dt: f64,
    /// Upper bound on any single flight segment, s.
    pub max_flight_time: f64,
    /// Box of observed hitting states mapped onto `[-1, 1]` before entering
    /// the networks.
    pub state_box: [Interval; 9],
    /// Desired goals, cycled by episode index.
    pub goals: Vec<Goal>,
}

impl Default for EnvConfig {
    fn default() -> Self {
        Self {
            serve: ServeDistribution::default(),
            hit_plane_x: 0.3,
            height_weight: 0.07,
            observation_noise: [0.0; 9],
            execution_noise: [0.0; 3],
            physics: PhysicsParams::default(),
            geometry: TableGeometry::default(),
            dt: 1e-3,
            max_flight_time: 3.0,
            state_box: [
                Interval::new(0.25, 0.35),
                Interval::new(-0.8, 0.8),
                Interval::new(0.0, 0.6),
                Interval::new(-4.5, -2.5),
                Interval::new(-0.6, 0.6),
                Interval::new(-0.5, 3.5),
                Interval::new(-1.0, 1.0),
                Interval::new(-50.0, 50.0),
                Interval::new(-1.0, 1.0),
            ],
            goals: vec![Goal::new(2.0, 0.0)],
        }
    }
}

impl EnvConfig {
    pub fn validate(&self) -> Result<(), EnvError> {
        let bad = |m: String| Err(EnvError::InvalidConfig(m));
        self.physics.validate()?;
        if self.observation_noise.iter().any(|s| !(*s >= 0.0)) {
            return bad("observation noise std devs must be >= 0".into());
        }
        if self.execution_noise.iter().any(|s| !(*s >= 0.0)) {
            return bad("execution noise std devs must be >= 0".into());
        }
        if !(self.height_weight >= 0.0) {
            return bad(format!("height_weight must be >= 0, got {}", self.height_weight));
        }
        if !(self.dt > 0.0) || !(self.max_flight_time > 0.0) {
            return bad("dt and max_flight_time must be positive".into());
        }
        if self.goals.is_empty() {
            return bad("at least one goal is required".into());
        }
        let serve = &self.serve;
        let all = serve.position.iter().chain(&serve.velocity).chain(&serve.spin);
        for iv in all.chain(&self.state_box) {
            if !(iv.lo <= iv.hi) {
                return bad(format!("empty interval [{}, {}]", iv.lo, iv.hi));
            }
        }
        Ok(())
    }

    /// Goal for the given (zero-based) episode.
    pub fn goal_for_episode(&self, episode: usize) -> Goal {
        self.goals[episode % self.goals.len()]
    }

    /// Table surface as the goal normalization box.
    pub fn goal_box(&self) -> [Interval; 2] {
        let hw = self.geometry.half_width();
        [Interval::new(0.0, self.geometry.length), Interval::new(-hw, hw)]
    }

    /// Same config with all observation and execution noise removed.
    pub fn noiseless(&self) -> Self {
        Self {
            observation_noise: [0.0; 9],
            execution_noise: [0.0; 3],
            ..self.clone()
        }
    }
}
