//! Corruption accounting with budget enforcement.

use serde::{Deserialize, Serialize};

use crate::error::{BanditError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Budget {
    Bounded(f64),
    Unbounded,
}

impl Budget {
    pub fn limit(&self) -> f64 {
        match *self {
            Budget::Bounded(c) => c,
            Budget::Unbounded => f64::INFINITY,
        }
    }
}

/// Tracks `C = sum_t max_a |r^t(a) - r_S^t(a)|` and the per-arm totals
/// `C(a) = sum_t |r^t(a) - r_S^t(a)|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorruptionLedger {
    budget: Budget,
    total_spent: f64,
    per_arm_spent: Vec<f64>,
}

impl CorruptionLedger {
    pub fn new(budget: Budget, num_arms: usize) -> Self {
        Self {
            budget,
            total_spent: 0.0,
            per_arm_spent: vec![0.0; num_arms],
        }
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn total_spent(&self) -> f64 {
        self.total_spent
    }

    pub fn per_arm_spent(&self) -> &[f64] {
        &self.per_arm_spent
    }

    pub fn remaining(&self) -> f64 {
        (self.budget.limit() - self.total_spent).max(0.0)
    }

    /// Whether charging `amount` this round keeps `total_spent <= budget`,
    /// evaluated with exactly the arithmetic [`charge`](Self::charge) uses.
    pub fn affordable(&self, amount: f64) -> bool {
        self.total_spent + amount <= self.budget.limit()
    }

    /// Charges one round. The ledger is left untouched on error.
    pub fn charge(&mut self, stochastic: &[f64], corrupted: &[f64]) -> Result<()> {
        debug_assert_eq!(stochastic.len(), self.per_arm_spent.len());
        debug_assert_eq!(corrupted.len(), self.per_arm_spent.len());
        let mut round_max: f64 = 0.0;
        for (s, c) in stochastic.iter().zip(corrupted) {
            round_max = round_max.max((c - s).abs());
        }
        if round_max == 0.0 {
            return Ok(());
        }
        if !self.affordable(round_max) {
            return Err(BanditError::BudgetExceeded {
                attempted: self.total_spent + round_max,
                budget: self.budget.limit(),
            });
        }
        self.total_spent += round_max;
        for ((acc, s), c) in self.per_arm_spent.iter_mut().zip(stochastic).zip(corrupted) {
            *acc += (c - s).abs();
        }
        Ok(())
    }
}
