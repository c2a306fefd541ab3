use thiserror::Error;

use crate::env::EnvError;
use crate::neuralnet::NetError;
use crate::physics::PhysicsError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Physics(#[from] PhysicsError),
    #[error(transparent)]
    Env(#[from] EnvError),
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    EmptyBatch(&'static str),
    #[error("{context}: {message}")]
    Format { context: String, message: String },
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            context: context.into(),
            source,
        }
    }

    pub(crate) fn format(context: impl Into<String>, message: impl std::fmt::Display) -> Self {
        Error::Format {
            context: context.into(),
            message: message.to_string(),
        }
    }
}
