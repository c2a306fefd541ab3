//! Small fully-connected networks with exact reverse-mode gradients.
//!
//! Sized for the tiny actor and critic used by the agent: a handful of dense
//! layers, f64 throughout, batched forward/backward on row-major
//! `(batch, features)` matrices.

mod adam;
mod checkpoint;
mod gradcheck;
mod mlp;

use thiserror::Error;

pub use adam::{adam_step, AdamConfig, AdamState};
pub use checkpoint::{load_checkpoint, save_checkpoint, CheckpointHeader, CHECKPOINT_MAGIC};
pub use gradcheck::{gradient_check, relative_error, GradCheckReport, REL_ERROR_FLOOR};
pub use mlp::{Activation, GradBuffer, Layer, MlpNet, Tape};

#[derive(Debug, Error)]
pub enum NetError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("tape does not belong to this network state (stale or foreign)")]
    StaleTape,
    #[error("shape mismatch between network and gradient/optimizer buffers")]
    ShapeMismatch,
    #[error("invalid architecture: {0}")]
    InvalidArchitecture(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
