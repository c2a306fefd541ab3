//! Experiment runner: configs, multi-seed training, random search, mode
//! comparison, evaluation and the files they leave behind.
//!
//! Layout of an experiment directory:
//!
//! ```text
//! config.toml            full resolved config
//! summary.json           TrialSummary
//! episodes_seed<N>.csv   one EpisodeLog row per episode
//! plot_seed<N>.csv       goal error and its running mean
//! actor_seed<N>.ckpt     final actor
//! critic_seed<N>.ckpt    final critic
//! ```

mod compare;
mod config;
mod evaluate;
mod experiment;
mod noise;
mod plot;
mod search;
pub mod summary;

use std::path::Path;

use serde::Serialize;

use crate::Error;

pub use compare::{compare_modes, ModeRow};
pub use config::ExperimentConfig;
pub use evaluate::{evaluate_checkpoint, EvalRow};
pub use experiment::{read_episode_log, run_experiment, run_seed, CsvSink, SeedPaths};
pub use noise::{calibrate_noise, landing_scatter, NoiseCalibration, NoiseProfile};
pub use plot::{emit_plot_data, plot_rows, running_average, PlotRow};
pub use search::{apply_param, run_search, ParamRange, SearchSpace, TrialResult, SEARCHABLE};
pub use summary::{summarize, summarize_seed, Millimeters, SeedSummary, TrialSummary};

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<(), Error> {
    let ctx = || format!("writing {}", path.display());
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::io(ctx(), e.into()))?;
    for row in rows {
        w.serialize(row).map_err(|e| Error::io(ctx(), e.into()))?;
    }
    w.flush().map_err(|e| Error::io(ctx(), e))
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> Result<(), Error> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::format("json", e))?;
    std::fs::write(path, text + "\n").map_err(|e| Error::io(format!("writing {}", path.display()), e))
}
