//! Ground-truth bandit instances.

use serde::{Deserialize, Serialize};

use crate::error::{BanditError, Result};

/// Reward distribution of a single arm. Support is always inside `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArmDistribution {
    Bernoulli(f64),
    PointMass(f64),
}

impl ArmDistribution {
    pub fn mean(&self) -> f64 {
        match *self {
            ArmDistribution::Bernoulli(p) => p,
            ArmDistribution::PointMass(v) => v,
        }
    }

    /// Maps one uniform draw in `[0, 1)` to a reward. Bernoulli pays 1 iff `u < p`.
    pub fn sample_with(&self, u: f64) -> f64 {
        match *self {
            ArmDistribution::Bernoulli(p) => {
                if u < p {
                    1.0
                } else {
                    0.0
                }
            }
            ArmDistribution::PointMass(v) => v,
        }
    }

    fn validate(&self) -> Result<()> {
        let v = self.mean();
        if !(0.0..=1.0).contains(&v) {
            return Err(BanditError::InvalidInstance(format!(
                "arm parameter {v} outside [0, 1]"
            )));
        }
        Ok(())
    }
}

/// K arm distributions and a horizon T.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BanditInstance {
    arms: Vec<ArmDistribution>,
    horizon: u64,
    optimal: usize,
}

impl BanditInstance {
    pub fn new(arms: Vec<ArmDistribution>, horizon: u64) -> Result<Self> {
        if arms.len() < 2 {
            return Err(BanditError::InvalidInstance(format!(
                "need at least 2 arms, got {}",
                arms.len()
            )));
        }
        if horizon == 0 {
            return Err(BanditError::InvalidInstance("horizon must be positive".into()));
        }
        for arm in &arms {
            arm.validate()?;
        }
        // lowest index among the maximal means
        let mut optimal = 0;
        for (a, arm) in arms.iter().enumerate() {
            if arm.mean() > arms[optimal].mean() {
                optimal = a;
            }
        }
        Ok(Self {
            arms,
            horizon,
            optimal,
        })
    }

    pub fn bernoulli(means: &[f64], horizon: u64) -> Result<Self> {
        Self::new(
            means.iter().map(|&p| ArmDistribution::Bernoulli(p)).collect(),
            horizon,
        )
    }

    pub fn point_mass(values: &[f64], horizon: u64) -> Result<Self> {
        Self::new(
            values.iter().map(|&v| ArmDistribution::PointMass(v)).collect(),
            horizon,
        )
    }

    pub fn arms(&self) -> &[ArmDistribution] {
        &self.arms
    }

    pub fn num_arms(&self) -> usize {
        self.arms.len()
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn with_horizon(&self, horizon: u64) -> Result<Self> {
        Self::new(self.arms.clone(), horizon)
    }

    pub fn mean(&self, arm: usize) -> f64 {
        self.arms[arm].mean()
    }

    pub fn optimal_arm(&self) -> usize {
        self.optimal
    }

    /// `mean(a*) - mean(a)`; zero for co-optimal arms.
    pub fn gap(&self, arm: usize) -> f64 {
        self.mean(self.optimal) - self.mean(arm)
    }

    pub fn gaps(&self) -> Vec<f64> {
        (0..self.num_arms()).map(|a| self.gap(a)).collect()
    }
}
