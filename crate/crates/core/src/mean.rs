//! Running means kept as `(sum, count)` so long horizons do not drift.

use crate::error::{BanditError, Result};

pub(crate) fn check_reward(reward: f64) -> Result<()> {
    if (0.0..=1.0).contains(&reward) {
        Ok(())
    } else {
        Err(BanditError::InvalidReward(reward))
    }
}

/// Incremental update `((count * mean + reward) / (count + 1), count + 1)`.
///
/// `mean` is ignored when `count == 0`.
pub fn running_mean_update(mean: f64, count: u64, reward: f64) -> Result<(f64, u64)> {
    check_reward(reward)?;
    if count == 0 {
        return Ok((reward, 1));
    }
    let n = count as f64;
    let updated = (n * mean + reward) / (n + 1.0);
    Ok((updated.clamp(0.0, 1.0), count + 1))
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RunningMean {
    sum: f64,
    count: u64,
}

impl RunningMean {
    pub fn push(&mut self, reward: f64) -> Result<()> {
        check_reward(reward)?;
        self.sum += reward;
        self.count += 1;
        Ok(())
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn sum(&self) -> f64 {
        self.sum
    }

    /// Zero before the first sample.
    pub fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            (self.sum / self.count as f64).clamp(0.0, 1.0)
        }
    }
}
