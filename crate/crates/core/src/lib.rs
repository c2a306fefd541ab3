//! One-step actor-critic learning of table tennis returns.
//!
//! - [`physics`]: ball flight with drag and Magnus lift, RK4, bounce models.
//! - [`env`]: the one-step return task and its reward.
//! - [`neuralnet`]: small MLPs with exact gradients, Adam, checkpoints.
//! - [`aprg`]: the agent (parametrized-reward critic, actor trained through
//!   the reward gradient, gradient post-optimization of actions).
//! - [`harness`]: experiments, multi-seed trials, random search, plot data.
//!
//! The `examples/` directory has one runnable program per capability.

pub mod aprg;
pub mod env;
pub mod harness;
pub mod neuralnet;
pub mod physics;

mod error;

pub use error::Error;
