use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ttrl::aprg::Mode;
use ttrl::harness::{self, ExperimentConfig, SearchSpace};
use ttrl::Error;

#[derive(Parser)]
#[command(name = "ttrl", version, about = "Train and evaluate table tennis return agents")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train one experiment (every seed) and write logs, checkpoints and a summary.
    Train(Common),
    /// Random hyperparameter search.
    Search {
        #[command(flatten)]
        common: Common,
        /// Search space file (TOML); the built-in space otherwise.
        #[arg(long)]
        space: Option<PathBuf>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seeds_per_trial: Option<usize>,
        /// Seed of the hyperparameter sampling.
        #[arg(long)]
        master_seed: Option<u64>,
    },
    /// Train several modes on the same seeds.
    Compare {
        #[command(flatten)]
        common: Common,
        /// Modes to compare (default: all).
        #[arg(long, value_delimiter = ',')]
        modes: Vec<Mode>,
    },
    /// Play noise-free serves with a saved actor.
    Evaluate {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        checkpoint: PathBuf,
        #[arg(long, default_value_t = 50)]
        episodes: usize,
    },
    /// Print the resolved experiment config (or the search space) as TOML.
    PrintConfig {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        search_space: bool,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    scenario: Option<String>,
    /// Comma-separated list of seeds.
    #[arg(long, alias = "seed", value_delimiter = ',')]
    seeds: Vec<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    mode: Option<Mode>,
}

impl Common {
    fn resolve(&self) -> Result<ExperimentConfig, Error> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => ExperimentConfig::for_scenario(self.scenario.as_deref().unwrap_or("serve"))?,
        };
        if let (Some(name), Some(_)) = (&self.scenario, &self.config) {
            let preset = ExperimentConfig::for_scenario(name)?;
            cfg.scenario = preset.scenario;
            cfg.env = preset.env;
            cfg.output_dir = preset.output_dir;
        }
        if !self.seeds.is_empty() {
            cfg.seeds = self.seeds.clone();
        }
        if let Some(out) = &self.out {
            cfg.output_dir = out.clone();
        }
        if let Some(mode) = self.mode {
            cfg.aprg.mode = mode;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn print_summary(s: &harness::TrialSummary) {
    for seed in &s.seeds {
        println!(
            "seed {:>4}: last-{} mean {:7.1} mm (x {:6.1}, y {:6.1})",
            seed.seed,
            s.window,
            seed.last_mean * 1e3,
            seed.last_x_error * 1e3,
            seed.last_y_error * 1e3
        );
    }
    println!(
        "mean {:.1} mm, median {:.1} mm, pooled median {:.1} mm",
        s.mm.mean, s.mm.median, s.mm.pooled_median
    );
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Train(common) => {
            let cfg = common.resolve()?;
            let summary = harness::run_experiment(&cfg)?;
            print_summary(&summary);
            println!("wrote {}", cfg.output_dir.display());
        }
        Command::Search {
            common,
            space,
            trials,
            seeds_per_trial,
            master_seed,
        } => {
            let cfg = common.resolve()?;
            let mut space = match space {
                Some(p) => SearchSpace::load(&p)?,
                None => SearchSpace::default(),
            };
            space.trials = trials.unwrap_or(space.trials);
            space.seeds_per_trial = seeds_per_trial.unwrap_or(space.seeds_per_trial);
            space.master_seed = master_seed.unwrap_or(space.master_seed);
            let results = harness::run_search(&space, &cfg)?;
            for (rank, r) in results.iter().enumerate().take(10) {
                println!("#{:<3} trial {:>3}: {:7.1} mm  {:?}", rank + 1, r.trial, r.summary.mm.mean, r.params);
            }
            println!("wrote {}", cfg.output_dir.display());
        }
        Command::Compare { common, modes } => {
            let cfg = common.resolve()?;
            let modes = if modes.is_empty() { Mode::ALL.to_vec() } else { modes };
            for row in harness::compare_modes(&cfg, &modes)? {
                println!("{:<6} mean {:7.1} mm, median {:7.1} mm", row.mode, row.mean * 1e3, row.median * 1e3);
            }
        }
        Command::Evaluate {
            common,
            checkpoint,
            episodes,
        } => {
            let cfg = common.resolve()?;
            let rows = harness::evaluate_checkpoint(&checkpoint, &cfg.env, episodes, cfg.seeds[0])?;
            std::fs::create_dir_all(&cfg.output_dir).map_err(|e| Error::Io {
                context: format!("creating {}", cfg.output_dir.display()),
                source: e,
            })?;
            let path = cfg.output_dir.join("evaluation.csv");
            harness::write_csv(&path, &rows)?;
            let errors: Vec<f64> = rows.iter().map(|r| r.goal_error).collect();
            if !errors.is_empty() {
                println!(
                    "{} episodes: mean goal error {:.1} mm",
                    errors.len(),
                    harness::summary::mean(&errors) * 1e3
                );
            }
            println!("wrote {}", path.display());
        }
        Command::PrintConfig { common, search_space } => {
            let text = if search_space {
                toml::to_string(&SearchSpace::default()).map_err(|e| Error::Config(e.to_string()))?
            } else {
                common.resolve()?.to_toml_string()?
            };
            print!("{text}");
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
