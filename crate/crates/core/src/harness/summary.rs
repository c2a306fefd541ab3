use serde::{Deserialize, Serialize};

use crate::aprg::EpisodeLog;
use crate::Error;

/// Final metrics of one seed. Errors are in meters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedSummary {
    pub seed: u64,
    pub episodes: usize,
    /// Mean goal error over the last `window` episodes.
    pub last_mean: f64,
    pub last_median: f64,
    /// Mean of `|achieved_x - goal_x|` over the same episodes.
    pub last_x_error: f64,
    pub last_y_error: f64,
    /// Mean goal error over the first `window` episodes after warm-up.
    pub early_mean: Option<f64>,
    /// `last_mean < early_mean`.
    pub improved: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Millimeters {
    pub mean: f64,
    pub median: f64,
    pub pooled_median: f64,
    pub x_error: f64,
    pub y_error: f64,
}

/// Aggregate over seeds. Every number is recomputable from the episode logs
/// with [`summarize`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub window: usize,
    pub warmup: usize,
    pub seeds: Vec<SeedSummary>,
    /// Mean over seeds of the per-seed `last_mean`.
    pub mean: f64,
    /// Median over seeds of the per-seed `last_mean`.
    pub median: f64,
    /// Median of all last-window episode errors of all seeds together.
    pub pooled_median: f64,
    pub x_error: f64,
    pub y_error: f64,
    pub mm: Millimeters,
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Median; the mean of the two middle values for even lengths.
pub fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

pub fn summarize_seed(seed: u64, log: &[EpisodeLog], window: usize, warmup: usize) -> Result<SeedSummary, Error> {
    if log.is_empty() {
        return Err(Error::Config(format!("seed {seed}: empty episode log")));
    }
    let last = &log[log.len().saturating_sub(window)..];
    let errors: Vec<f64> = last.iter().map(|l| l.goal_error).collect();
    let x: Vec<f64> = last.iter().map(|l| (l.achieved_x - l.goal_x).abs()).collect();
    let y: Vec<f64> = last.iter().map(|l| (l.achieved_y - l.goal_y).abs()).collect();
    let early = log.get(warmup..(warmup + window).min(log.len())).filter(|e| !e.is_empty());
    let early_mean = early.map(|e| mean(&e.iter().map(|l| l.goal_error).collect::<Vec<_>>()));
    let last_mean = mean(&errors);
    Ok(SeedSummary {
        seed,
        episodes: log.len(),
        last_mean,
        last_median: median(&errors),
        last_x_error: mean(&x),
        last_y_error: mean(&y),
        early_mean,
        improved: early_mean.map(|e| last_mean < e),
    })
}

pub fn summarize(logs: &[(u64, Vec<EpisodeLog>)], window: usize, warmup: usize) -> Result<TrialSummary, Error> {
    if logs.is_empty() {
        return Err(Error::Config("nothing to summarize".into()));
    }
    if window == 0 {
        return Err(Error::Config("summary window must be >= 1".into()));
    }
    let seeds = logs
        .iter()
        .map(|(seed, log)| summarize_seed(*seed, log, window, warmup))
        .collect::<Result<Vec<_>, _>>()?;
    let means: Vec<f64> = seeds.iter().map(|s| s.last_mean).collect();
    let pooled: Vec<f64> = logs
        .iter()
        .flat_map(|(_, log)| log[log.len().saturating_sub(window)..].iter().map(|l| l.goal_error))
        .collect();
    let x_error = mean(&seeds.iter().map(|s| s.last_x_error).collect::<Vec<_>>());
    let y_error = mean(&seeds.iter().map(|s| s.last_y_error).collect::<Vec<_>>());
    let (m, md, pm) = (mean(&means), median(&means), median(&pooled));
    Ok(TrialSummary {
        window,
        warmup,
        seeds,
        mean: m,
        median: md,
        pooled_median: pm,
        x_error,
        y_error,
        mm: Millimeters {
            mean: m * 1e3,
            median: md * 1e3,
            pooled_median: pm * 1e3,
            x_error: x_error * 1e3,
            y_error: y_error * 1e3,
        },
    })
}
