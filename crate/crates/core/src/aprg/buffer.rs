use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::env::{reward_from_params, Action, Goal, RewardParams};

/// One stored episode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpisodeRecord {
    /// Observed hitting state (position, velocity, spin).
    pub observed_state: [f64; 9],
    pub goal: Goal,
    /// Commanded action.
    pub action: Action,
    pub reward_params: RewardParams,
    pub reward: f64,
}

impl EpisodeRecord {
    /// Whether `reward` agrees with `reward_params` and `goal`.
    pub fn is_consistent(&self, height_weight: f64) -> bool {
        let r = reward_from_params(&self.reward_params, &self.goal, height_weight);
        (r - self.reward).abs() <= 1e-12 * (1.0 + r.abs())
    }
}

/// Unbounded, insertion-ordered episode store with uniform sampling.
#[derive(Debug, Clone, Default)]
pub struct ReplayBuffer {
    records: Vec<EpisodeRecord>,
}

impl ReplayBuffer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, record: EpisodeRecord) {
        self.records.push(record);
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &[EpisodeRecord] {
        &self.records
    }

    /// `n` records drawn uniformly with replacement; empty if the buffer is.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Vec<&EpisodeRecord> {
        if self.records.is_empty() {
            return Vec::new();
        }
        (0..n)
            .map(|_| &self.records[rng.random_range(0..self.records.len())])
            .collect()
    }
}
