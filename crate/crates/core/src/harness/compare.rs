use serde::{Deserialize, Serialize};

use super::{run_experiment, summary, ExperimentConfig, TrialSummary};
use crate::aprg::Mode;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModeRow {
    pub mode: Mode,
    /// `(seed, last-window mean goal error)` in meters.
    pub per_seed: Vec<(u64, f64)>,
    pub mean: f64,
    pub median: f64,
    pub summary: TrialSummary,
}

/// Train every mode on the same seeds. Runs with equal seeds see the same
/// serves and the same warm-up actions, so the comparison is paired. Each
/// mode writes to `cfg.output_dir/<mode>`; the table goes to
/// `comparison.json`.
pub fn compare_modes(cfg: &ExperimentConfig, modes: &[Mode]) -> Result<Vec<ModeRow>, Error> {
    if modes.is_empty() {
        return Err(Error::Config("compare needs at least one mode".into()));
    }
    let mut rows = Vec::with_capacity(modes.len());
    for &mode in modes {
        let mut run = cfg.clone();
        run.aprg.mode = mode;
        run.output_dir = cfg.output_dir.join(mode.as_str());
        let summary = run_experiment(&run)?;
        let per_seed: Vec<(u64, f64)> = summary.seeds.iter().map(|s| (s.seed, s.last_mean)).collect();
        let means: Vec<f64> = per_seed.iter().map(|p| p.1).collect();
        rows.push(ModeRow {
            mode,
            mean: summary::mean(&means),
            median: summary::median(&means),
            per_seed,
            summary,
        });
    }
    super::write_json(&cfg.output_dir.join("comparison.json"), &rows)?;
    Ok(rows)
}
