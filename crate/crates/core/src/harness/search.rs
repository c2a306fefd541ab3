use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{run_experiment, ExperimentConfig, TrialSummary};
use crate::aprg::AprgConfig;
use crate::Error;

/// Names accepted as keys of [`SearchSpace::params`].
pub const SEARCHABLE: [&str; 11] = [
    "critic_lr",
    "actor_lr",
    "train_steps",
    "batch_size",
    "hidden_width",
    "warmup_noise_scale",
    "explore_noise_scale",
    "noise_decay",
    "post_opt_steps",
    "post_opt_step_size",
    "warmup_episodes",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ParamRange {
    Uniform { lo: f64, hi: f64 },
    LogUniform { lo: f64, hi: f64 },
    /// Inclusive on both ends.
    Int { lo: i64, hi: i64 },
    Choice { values: Vec<f64> },
}

impl ParamRange {
    fn validate(&self, name: &str) -> Result<(), Error> {
        let ok = match self {
            ParamRange::Uniform { lo, hi } => lo <= hi,
            ParamRange::LogUniform { lo, hi } => *lo > 0.0 && lo <= hi,
            ParamRange::Int { lo, hi } => lo <= hi,
            ParamRange::Choice { values } => !values.is_empty(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("empty or invalid range for {name}: {self:?}")))
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match *self {
            ParamRange::Uniform { lo, hi } => lo + (hi - lo) * rng.random::<f64>(),
            ParamRange::LogUniform { lo, hi } => (lo.ln() + (hi.ln() - lo.ln()) * rng.random::<f64>()).exp(),
            ParamRange::Int { lo, hi } => rng.random_range(lo..=hi) as f64,
            ParamRange::Choice { ref values } => values[rng.random_range(0..values.len())],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchSpace {
    pub trials: usize,
    /// Each trial trains seeds `0..seeds_per_trial`, so trials are paired.
    pub seeds_per_trial: usize,
    /// Seeds the hyperparameter sampling, not the training runs.
    pub master_seed: u64,
    pub params: BTreeMap<String, ParamRange>,
}

impl Default for SearchSpace {
    fn default() -> Self {
        let params = [
            ("critic_lr", ParamRange::LogUniform { lo: 3e-4, hi: 3e-3 }),
            ("actor_lr", ParamRange::LogUniform { lo: 3e-5, hi: 1e-3 }),
            ("train_steps", ParamRange::Int { lo: 8, hi: 24 }),
            ("batch_size", ParamRange::Choice { values: vec![16.0, 32.0, 64.0] }),
            ("explore_noise_scale", ParamRange::Uniform { lo: 0.25, hi: 2.0 }),
            ("noise_decay", ParamRange::Uniform { lo: 0.97, hi: 1.0 }),
        ];
        Self {
            trials: 50,
            seeds_per_trial: 5,
            master_seed: 0,
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

impl SearchSpace {
    pub fn validate(&self) -> Result<(), Error> {
        if self.trials == 0 || self.seeds_per_trial == 0 {
            return Err(Error::Config("a search needs at least one trial and one seed".into()));
        }
        for (name, range) in &self.params {
            if !SEARCHABLE.contains(&name.as_str()) {
                return Err(Error::Config(format!(
                    "{name} is not searchable; expected one of {SEARCHABLE:?}"
                )));
            }
            range.validate(name)?;
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self, Error> {
        let space: Self = toml::from_str(text).map_err(|e| Error::format("search space", e))?;
        space.validate()?;
        Ok(space)
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        Self::from_toml_str(&text)
    }

    /// Parameter draws of every trial, a pure function of `master_seed`.
    pub fn sample_trials(&self) -> Vec<BTreeMap<String, f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        (0..self.trials)
            .map(|_| self.params.iter().map(|(k, r)| (k.clone(), r.sample(&mut rng))).collect())
            .collect()
    }
}

fn as_count(name: &str, v: f64) -> Result<usize, Error> {
    if v >= 0.0 && v.fract() == 0.0 {
        Ok(v as usize)
    } else {
        Err(Error::Config(format!("{name} must be a non-negative integer, got {v}")))
    }
}

/// Set one searchable hyperparameter on `config`. The `*_scale` entries
/// multiply the corresponding std devs of `base`.
pub fn apply_param(config: &mut AprgConfig, base: &AprgConfig, name: &str, value: f64) -> Result<(), Error> {
    match name {
        "critic_lr" => config.critic_optim.lr = value,
        "actor_lr" => config.actor_optim.lr = value,
        "train_steps" => config.train_steps = as_count(name, value)?,
        "batch_size" => config.batch_size = as_count(name, value)?,
        "hidden_width" => {
            let w = as_count(name, value)?;
            config.hidden.iter_mut().for_each(|h| *h = w);
        }
        "warmup_noise_scale" => config.warmup_noise = base.warmup_noise.map(|s| s * value),
        "explore_noise_scale" => config.explore_noise = base.explore_noise.map(|s| s * value),
        "noise_decay" => config.noise_decay = value,
        "post_opt_steps" => config.post_opt_steps = as_count(name, value)?,
        "post_opt_step_size" => config.post_opt_step_size = value,
        "warmup_episodes" => config.warmup_episodes = as_count(name, value)?,
        _ => return Err(Error::Config(format!("{name} is not searchable"))),
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialResult {
    pub trial: usize,
    pub params: BTreeMap<String, f64>,
    pub aprg: AprgConfig,
    pub summary: TrialSummary,
}

#[derive(Debug, Clone, Serialize)]
struct RankingRow<'a> {
    rank: usize,
    trial: usize,
    mean_mm: f64,
    median_mm: f64,
    params: &'a str,
}

/// Random search. Trial `i` writes its experiment to
/// `base.output_dir/trial_<i>`; the space is saved as `space.toml` and the
/// ranking (best first, by mean last-window error) as `ranking.csv` and
/// `trials.json`.
pub fn run_search(space: &SearchSpace, base: &ExperimentConfig) -> Result<Vec<TrialResult>, Error> {
    space.validate()?;
    base.validate()?;
    let out = &base.output_dir;
    super::experiment::create_dir(out)?;
    let space_text = toml::to_string(space).map_err(|e| Error::format("search space", e))?;
    std::fs::write(out.join("space.toml"), space_text).map_err(|e| Error::io("writing space.toml", e))?;

    let mut results = Vec::with_capacity(space.trials);
    for (trial, params) in space.sample_trials().into_iter().enumerate() {
        let mut cfg = base.clone();
        cfg.seeds = (0..space.seeds_per_trial as u64).collect();
        cfg.output_dir = out.join(format!("trial_{trial:03}"));
        for (name, &value) in &params {
            apply_param(&mut cfg.aprg, &base.aprg, name, value)?;
        }
        let summary = run_experiment(&cfg)?;
        results.push(TrialResult {
            trial,
            params,
            aprg: cfg.aprg,
            summary,
        });
    }
    results.sort_by(|a, b| a.summary.mean.total_cmp(&b.summary.mean).then(a.trial.cmp(&b.trial)));

    let described: Vec<String> = results
        .iter()
        .map(|r| r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" "))
        .collect();
    let rows: Vec<RankingRow> = results
        .iter()
        .zip(&described)
        .enumerate()
        .map(|(rank, (r, p))| RankingRow {
            rank: rank + 1,
            trial: r.trial,
            mean_mm: r.summary.mm.mean,
            median_mm: r.summary.mm.median,
            params: p,
        })
        .collect();
    super::write_csv(&out.join("ranking.csv"), &rows)?;
    super::write_json(&out.join("trials.json"), &results)?;
    Ok(results)
}
