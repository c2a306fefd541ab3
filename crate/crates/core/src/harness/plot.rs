use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::aprg::EpisodeLog;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlotRow {
    pub episode: usize,
    pub goal_error: f64,
    pub running_mean: f64,
}

/// Trailing running mean: entry `i` averages `values[i+1-window..=i]`,
/// or everything so far while fewer than `window` values exist.
pub fn running_average(values: &[f64], window: usize) -> Result<Vec<f64>, Error> {
    if window == 0 || window > values.len() {
        return Err(Error::Config(format!(
            "running-average window {window} does not fit {} values",
            values.len()
        )));
    }
    Ok((0..values.len())
        .map(|i| {
            let lo = (i + 1).saturating_sub(window);
            values[lo..=i].iter().sum::<f64>() / (i + 1 - lo) as f64
        })
        .collect())
}

pub fn plot_rows(log: &[EpisodeLog], window: usize) -> Result<Vec<PlotRow>, Error> {
    let errors: Vec<f64> = log.iter().map(|l| l.goal_error).collect();
    let avg = running_average(&errors, window)?;
    Ok(log
        .iter()
        .zip(avg)
        .map(|(l, running_mean)| PlotRow {
            episode: l.episode,
            goal_error: l.goal_error,
            running_mean,
        })
        .collect())
}

/// Write the goal-error series and its running mean as CSV.
pub fn emit_plot_data(log: &[EpisodeLog], window: usize, path: &Path) -> Result<Vec<PlotRow>, Error> {
    let rows = plot_rows(log, window)?;
    super::write_csv(path, &rows)?;
    Ok(rows)
}
