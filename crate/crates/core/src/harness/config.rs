use serde::{Deserialize, Serialize};

use crate::adversary::AdversarySpec;
use crate::algorithms::LearnerSpec;
use crate::error::{BanditError, Result};
use crate::instance::BanditInstance;

pub const DEFAULT_DELTA: f64 = 0.05;

/// Powers of two below `horizon`, then `horizon` itself.
pub fn default_checkpoints(horizon: u64) -> Vec<u64> {
    let mut out: Vec<u64> = std::iter::successors(Some(1u64), |&t| t.checked_mul(2))
        .take_while(|&t| t < horizon)
        .collect();
    out.push(horizon);
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub name: String,
    /// Arms plus horizon T.
    pub instance: BanditInstance,
    pub learner: LearnerSpec,
    pub adversary: AdversarySpec,
    pub master_seed: u64,
    /// Episode indices; each one keys its own random streams.
    pub episodes: Vec<u64>,
    /// Sorted rounds at which cumulative metrics are recorded, ending at T.
    pub checkpoints: Vec<u64>,
    /// Retain full per-round traces (memory heavy).
    pub keep_traces: bool,
    /// Verify learner invariants after every round.
    pub check_invariants: bool,
    /// Episode worker threads; `None` lets rayon decide.
    pub workers: Option<usize>,
}

impl ExperimentConfig {
    pub fn new(
        name: impl Into<String>,
        instance: BanditInstance,
        learner: LearnerSpec,
        adversary: AdversarySpec,
    ) -> Self {
        let checkpoints = default_checkpoints(instance.horizon());
        Self {
            name: name.into(),
            instance,
            learner,
            adversary,
            master_seed: 0,
            episodes: vec![0],
            checkpoints,
            keep_traces: false,
            check_invariants: true,
            workers: None,
        }
    }

    pub fn horizon(&self) -> u64 {
        self.instance.horizon()
    }

    pub fn with_seeds(mut self, master_seed: u64, count: u64) -> Self {
        self.master_seed = master_seed;
        self.episodes = (0..count).collect();
        self
    }

    /// Adds extra checkpoints to the current set.
    pub fn with_checkpoints(mut self, extra: &[u64]) -> Self {
        self.checkpoints.extend_from_slice(extra);
        self.checkpoints.sort_unstable();
        self.checkpoints.dedup();
        self
    }

    pub fn with_horizon(mut self, horizon: u64) -> Result<Self> {
        self.instance = self.instance.with_horizon(horizon)?;
        self.checkpoints.retain(|&t| t < horizon);
        self.checkpoints.push(horizon);
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        self.learner.validate()?;
        self.adversary.validate(&self.instance)?;
        if self.episodes.is_empty() {
            return Err(BanditError::config("seed_count", "at least one seed is required"));
        }
        let horizon = self.horizon();
        let sorted = self.checkpoints.windows(2).all(|w| w[0] < w[1]);
        if !sorted || self.checkpoints.first().is_some_and(|&t| t == 0) {
            return Err(BanditError::config("checkpoints", "must be strictly increasing positive rounds"));
        }
        if self.checkpoints.last() != Some(&horizon) {
            return Err(BanditError::config("checkpoints", format!("last checkpoint must equal the horizon {horizon}")));
        }
        if self.workers == Some(0) {
            return Err(BanditError::config("workers", "must be at least 1"));
        }
        Ok(())
    }
}
