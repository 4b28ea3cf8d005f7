use crate::error::Result;
use crate::mean::RunningMean;

use super::{Learner, PlaySource};

/// UCB1: play every arm once, then maximize `mean + sqrt(2 ln t / n)` with `t`
/// the number of completed rounds. Baseline only.
#[derive(Debug, Clone)]
pub struct Ucb1 {
    stats: Vec<RunningMean>,
    rounds: u64,
}

impl Ucb1 {
    pub fn new(num_arms: usize) -> Self {
        Self {
            stats: vec![RunningMean::default(); num_arms],
            rounds: 0,
        }
    }

    pub fn pull_counts(&self) -> Vec<u64> {
        self.stats.iter().map(RunningMean::count).collect()
    }

    fn index(&self, arm: usize) -> f64 {
        let s = &self.stats[arm];
        if s.count() == 0 {
            return f64::INFINITY;
        }
        s.mean() + (2.0 * (self.rounds as f64).ln() / s.count() as f64).sqrt()
    }

    fn select(&self) -> usize {
        let mut best = 0;
        let mut best_index = self.index(0);
        for a in 1..self.stats.len() {
            let idx = self.index(a);
            if idx > best_index {
                best = a;
                best_index = idx;
            }
        }
        best
    }
}

impl Learner for Ucb1 {
    fn name(&self) -> &'static str {
        "ucb"
    }

    fn num_arms(&self) -> usize {
        self.stats.len()
    }

    fn distribution_into(&self, out: &mut [f64]) {
        out.fill(0.0);
        out[self.select()] = 1.0;
    }

    fn choose(&mut self, _u: f64) -> Result<usize> {
        Ok(self.select())
    }

    fn last_source(&self) -> PlaySource {
        PlaySource::Single
    }

    fn observe(&mut self, arm: usize, reward: f64) -> Result<()> {
        self.stats[arm].push(reward)?;
        self.rounds += 1;
        Ok(())
    }
}
