//! One active-arm-elimination instance: pull counts, running means and the
//! inactive set.

use crate::error::Result;
use crate::mean::RunningMean;

#[derive(Debug, Clone, PartialEq)]
pub struct LayerState {
    stats: Vec<RunningMean>,
    inactive: Vec<bool>,
}

impl LayerState {
    pub fn new(num_arms: usize) -> Self {
        Self {
            stats: vec![RunningMean::default(); num_arms],
            inactive: vec![false; num_arms],
        }
    }

    pub fn num_arms(&self) -> usize {
        self.stats.len()
    }

    pub fn pulls(&self, arm: usize) -> u64 {
        self.stats[arm].count()
    }

    pub fn pull_counts(&self) -> Vec<u64> {
        self.stats.iter().map(RunningMean::count).collect()
    }

    pub fn mean(&self, arm: usize) -> f64 {
        self.stats[arm].mean()
    }

    pub fn total_pulls(&self) -> u64 {
        self.stats.iter().map(RunningMean::count).sum()
    }

    pub fn is_inactive(&self, arm: usize) -> bool {
        self.inactive[arm]
    }

    pub fn inactive(&self) -> &[bool] {
        &self.inactive
    }

    pub fn has_active(&self) -> bool {
        self.inactive.iter().any(|&x| !x)
    }

    pub fn first_active(&self) -> Option<usize> {
        self.inactive.iter().position(|&x| !x)
    }

    pub fn eliminate(&mut self, arm: usize) {
        self.inactive[arm] = true;
    }

    /// Active arm with the fewest pulls, lowest index on ties.
    pub fn select(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for a in 0..self.num_arms() {
            if self.inactive[a] {
                continue;
            }
            match best {
                Some(b) if self.pulls(b) <= self.pulls(a) => {}
                _ => best = Some(a),
            }
        }
        best
    }

    pub fn record(&mut self, arm: usize, reward: f64) -> Result<()> {
        self.stats[arm].push(reward)
    }

    /// Eliminates every dominated active arm; returns them in elimination order.
    pub fn elimination_sweep(&mut self, width: impl Fn(u64) -> f64) -> Vec<usize> {
        let means: Vec<f64> = (0..self.num_arms()).map(|a| self.mean(a)).collect();
        let widths: Vec<f64> = (0..self.num_arms()).map(|a| width(self.pulls(a))).collect();
        sweep_dominated(&means, &widths, &mut self.inactive)
    }
}

/// Repeatedly removes any active `a2` for which some active `a1` has
/// `mean[a1] - mean[a2] > width[a1] + width[a2]`, until no such pair remains.
pub fn sweep_dominated(means: &[f64], widths: &[f64], inactive: &mut [bool]) -> Vec<usize> {
    let k = means.len();
    let mut removed = Vec::new();
    loop {
        let mut changed = false;
        for loser in 0..k {
            if inactive[loser] {
                continue;
            }
            let dominated = (0..k).any(|winner| {
                !inactive[winner] && means[winner] - means[loser] > widths[winner] + widths[loser]
            });
            if dominated {
                inactive[loser] = true;
                removed.push(loser);
                changed = true;
            }
        }
        if !changed {
            return removed;
        }
    }
}
