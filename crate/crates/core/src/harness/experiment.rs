use std::fs::File;
use std::path::{Path, PathBuf};

use super::{emit_plot_data, summarize, ExperimentConfig, TrialSummary};
use crate::aprg::{run_training, EpisodeLog, MetricsSink, TrainingResult};
use crate::neuralnet::save_checkpoint;
use crate::Error;

/// Streams episode rows to a CSV file as they are produced.
pub struct CsvSink {
    path: PathBuf,
    writer: csv::Writer<File>,
}

impl CsvSink {
    pub fn create(path: &Path) -> Result<Self, Error> {
        let writer = csv::Writer::from_path(path).map_err(|e| Error::io(format!("creating {}", path.display()), e.into()))?;
        Ok(Self {
            path: path.to_path_buf(),
            writer,
        })
    }

    pub fn finish(mut self) -> Result<(), Error> {
        self.writer
            .flush()
            .map_err(|e| Error::io(format!("writing {}", self.path.display()), e))
    }
}

impl MetricsSink for CsvSink {
    fn record(&mut self, log: &EpisodeLog) -> Result<(), Error> {
        self.writer
            .serialize(log)
            .map_err(|e| Error::io(format!("writing {}", self.path.display()), e.into()))
    }
}

pub fn read_episode_log(path: &Path) -> Result<Vec<EpisodeLog>, Error> {
    let ctx = || format!("reading {}", path.display());
    let mut reader = csv::Reader::from_path(path).map_err(|e| Error::io(ctx(), e.into()))?;
    reader
        .deserialize()
        .collect::<Result<Vec<EpisodeLog>, _>>()
        .map_err(|e| Error::format(ctx(), e))
}

/// Files written for one seed inside the output directory.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedPaths {
    pub episodes: PathBuf,
    pub plot: PathBuf,
    pub actor: PathBuf,
    pub critic: PathBuf,
}

impl SeedPaths {
    pub fn new(dir: &Path, seed: u64) -> Self {
        Self {
            episodes: dir.join(format!("episodes_seed{seed}.csv")),
            plot: dir.join(format!("plot_seed{seed}.csv")),
            actor: dir.join(format!("actor_seed{seed}.ckpt")),
            critic: dir.join(format!("critic_seed{seed}.ckpt")),
        }
    }
}

pub(crate) fn create_dir(dir: &Path) -> Result<(), Error> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(format!("creating {}", dir.display()), e))
}

/// Train one seed and write its episode log, plot series and checkpoints.
pub fn run_seed(cfg: &ExperimentConfig, seed: u64) -> Result<TrainingResult, Error> {
    create_dir(&cfg.output_dir)?;
    let paths = SeedPaths::new(&cfg.output_dir, seed);
    let mut sink = CsvSink::create(&paths.episodes)?;
    let result = run_training(&cfg.env, &cfg.aprg, seed, &mut sink)?;
    sink.finish()?;
    emit_plot_data(&result.log, cfg.plot_window.min(result.log.len().max(1)), &paths.plot)?;
    save_checkpoint(&result.actor.net, &paths.actor)?;
    save_checkpoint(&result.critic.net, &paths.critic)?;
    Ok(result)
}

/// Train every seed of `cfg`, then write `config.toml` and `summary.json`
/// next to the per-seed files.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<TrialSummary, Error> {
    cfg.validate()?;
    create_dir(&cfg.output_dir)?;
    cfg.save(&cfg.output_dir.join("config.toml"))?;
    let mut logs = Vec::with_capacity(cfg.seeds.len());
    for &seed in &cfg.seeds {
        logs.push((seed, run_seed(cfg, seed)?.log));
    }
    let summary = summarize(&logs, cfg.summary_window, cfg.aprg.warmup_episodes)?;
    super::write_json(&cfg.output_dir.join("summary.json"), &summary)?;
    Ok(summary)
}
