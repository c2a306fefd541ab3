use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::aprg::AprgConfig;
use crate::env::{self, EnvConfig};
use crate::Error;

/// Everything needed to reproduce one experiment.
///
/// A config file only needs the keys it changes. Loading starts from the
/// named scenario preset and the default agent settings and overlays the
/// file on top, table by table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub scenario: String,
    pub seeds: Vec<u64>,
    pub output_dir: PathBuf,
    /// Running-average window of the plot series.
    pub plot_window: usize,
    /// Number of final episodes the summary averages over.
    pub summary_window: usize,
    pub env: EnvConfig,
    pub aprg: AprgConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::for_scenario("serve").expect("the serve preset exists")
    }
}

impl ExperimentConfig {
    pub fn for_scenario(name: &str) -> Result<Self, Error> {
        Ok(Self {
            scenario: name.to_string(),
            seeds: vec![0, 1, 2, 3, 4],
            output_dir: PathBuf::from("runs").join(name),
            plot_window: 30,
            summary_window: 50,
            env: env::preset(name)?,
            aprg: AprgConfig::default(),
        })
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.seeds.is_empty() {
            return Err(Error::Config("at least one seed is required".into()));
        }
        if self.plot_window == 0 || self.summary_window == 0 {
            return Err(Error::Config("plot_window and summary_window must be >= 1".into()));
        }
        self.env.validate()?;
        self.aprg.validate()
    }

    pub fn from_toml_str(text: &str) -> Result<Self, Error> {
        let overlay: toml::Table = text.parse().map_err(|e| Error::format("config", e))?;
        let scenario = match overlay.get("scenario") {
            None => "serve",
            Some(toml::Value::String(s)) => s.as_str(),
            Some(other) => return Err(Error::Config(format!("scenario must be a string, got {other}"))),
        };
        let base = Self::for_scenario(scenario)?;
        let mut merged = toml::Table::try_from(&base).map_err(|e| Error::format("config", e))?;
        merge(&mut merged, overlay);
        let cfg: Self = merged.try_into().map_err(|e| Error::format("config", e))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(format!("reading {}", path.display()), e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String, Error> {
        toml::to_string(self).map_err(|e| Error::format("config", e))
    }

    pub fn save(&self, path: &Path) -> Result<(), Error> {
        std::fs::write(path, self.to_toml_string()?).map_err(|e| Error::io(format!("writing {}", path.display()), e))
    }
}

/// Tables merge key by key; every other value (arrays included) replaces.
fn merge(base: &mut toml::Table, overlay: toml::Table) {
    for (key, value) in overlay {
        match (base.get_mut(&key), value) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => merge(b, o),
            (_, v) => {
                base.insert(key, v);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_round_trip_through_toml() {
        let cfg = ExperimentConfig::default();
        let text = cfg.to_toml_string().unwrap();
        assert_eq!(ExperimentConfig::from_toml_str(&text).unwrap(), cfg);
    }

    #[test]
    fn partial_file_overlays_the_preset() {
        let cfg = ExperimentConfig::from_toml_str(
            "scenario = \"x-play\"\nseeds = [7]\n[aprg]\ntrain_steps = 4\n[aprg.critic_optim]\nlr = 0.01\n",
        )
        .unwrap();
        let preset = env::preset("x-play").unwrap();
        assert_eq!(cfg.env, preset);
        assert_eq!(cfg.seeds, vec![7]);
        assert_eq!(cfg.aprg.train_steps, 4);
        assert_eq!(cfg.aprg.critic_optim.lr, 0.01);
        assert_eq!(cfg.aprg.critic_optim.beta2, 0.999);
        assert_eq!(cfg.aprg.batch_size, AprgConfig::default().batch_size);
    }

    #[test]
    fn rejects_unknown_keys_and_scenarios() {
        assert!(ExperimentConfig::from_toml_str("[aprg]\nlearning_rate = 1.0\n").is_err());
        assert!(ExperimentConfig::from_toml_str("scenario = \"moon\"\n").is_err());
        assert!(ExperimentConfig::from_toml_str("seeds = []\n").is_err());
    }
}
