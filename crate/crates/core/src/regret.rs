//! Episode traces and regret accounting.

use serde::{Deserialize, Serialize};

use crate::instance::BanditInstance;

/// Everything that happened in one protocol round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub stochastic_rewards: Vec<f64>,
    pub corrupted_rewards: Vec<f64>,
    pub learner_distribution: Vec<f64>,
    pub chosen_arm: usize,
    pub obtained_reward: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EpisodeTrace {
    pub rounds: Vec<RoundRecord>,
}

impl EpisodeTrace {
    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn num_arms(&self) -> usize {
        self.rounds.first().map_or(0, |r| r.stochastic_rewards.len())
    }

    /// Checks the per-round record invariants.
    pub fn validate(&self) -> Result<(), String> {
        for (i, r) in self.rounds.iter().enumerate() {
            let t = i + 1;
            if r.obtained_reward != r.corrupted_rewards[r.chosen_arm] {
                return Err(format!("round {t}: obtained reward differs from corrupted reward"));
            }
            let total: f64 = r.learner_distribution.iter().sum();
            if r.learner_distribution.iter().any(|&w| w < 0.0) || (total - 1.0).abs() > 1e-9 {
                return Err(format!("round {t}: learner distribution is not a probability vector"));
            }
        }
        Ok(())
    }

    pub fn pull_counts(&self) -> Vec<u64> {
        let mut counts = vec![0; self.num_arms()];
        for r in &self.rounds {
            counts[r.chosen_arm] += 1;
        }
        counts
    }

    /// Recomputes `sum_t max_a |r^t(a) - r_S^t(a)|` and the per-arm totals.
    pub fn corruption(&self) -> (f64, Vec<f64>) {
        let mut total = 0.0;
        let mut per_arm = vec![0.0; self.num_arms()];
        for r in &self.rounds {
            let mut round_max: f64 = 0.0;
            for (a, (c, s)) in r.corrupted_rewards.iter().zip(&r.stochastic_rewards).enumerate() {
                let d = (c - s).abs();
                per_arm[a] += d;
                round_max = round_max.max(d);
            }
            total += round_max;
        }
        (total, per_arm)
    }
}

fn best_in_hindsight<'a>(rows: impl Iterator<Item = &'a [f64]>, k: usize) -> f64 {
    let mut totals = vec![0.0; k];
    for row in rows {
        for (acc, r) in totals.iter_mut().zip(row) {
            *acc += r;
        }
    }
    totals.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// `max_a sum_t r^t(a) - sum_t r^t(a^t)` over the corrupted rewards.
pub fn compute_regret(trace: &EpisodeTrace) -> f64 {
    if trace.is_empty() {
        return 0.0;
    }
    let best = best_in_hindsight(
        trace.rounds.iter().map(|r| r.corrupted_rewards.as_slice()),
        trace.num_arms(),
    );
    let obtained: f64 = trace.rounds.iter().map(|r| r.obtained_reward).sum();
    best - obtained
}

/// Same as [`compute_regret`] but corruption is not counted as reward on
/// either side.
pub fn compute_uncorrupted_regret(trace: &EpisodeTrace) -> f64 {
    if trace.is_empty() {
        return 0.0;
    }
    let best = best_in_hindsight(
        trace.rounds.iter().map(|r| r.stochastic_rewards.as_slice()),
        trace.num_arms(),
    );
    let obtained: f64 = trace
        .rounds
        .iter()
        .map(|r| r.stochastic_rewards[r.chosen_arm])
        .sum();
    best - obtained
}

/// `sum_a pulls(a) * gap(a)`.
pub fn compute_pseudo_regret_gap_weighted(instance: &BanditInstance, pull_counts: &[u64]) -> f64 {
    pull_counts
        .iter()
        .enumerate()
        .map(|(a, &n)| n as f64 * instance.gap(a))
        .sum()
}

pub fn compute_positive_regret(regret: f64) -> f64 {
    regret.max(0.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegretReport {
    pub regret: f64,
    pub pseudo_regret_gap_weighted: f64,
    pub positive_regret: f64,
    pub uncorrupted_regret: f64,
    pub corruption_spent: f64,
    pub per_arm_corruption: Vec<f64>,
}

impl RegretReport {
    pub fn from_trace(instance: &BanditInstance, trace: &EpisodeTrace) -> Self {
        let regret = compute_regret(trace);
        let (corruption_spent, per_arm_corruption) = trace.corruption();
        Self {
            regret,
            pseudo_regret_gap_weighted: compute_pseudo_regret_gap_weighted(
                instance,
                &trace.pull_counts(),
            ),
            positive_regret: compute_positive_regret(regret),
            uncorrupted_regret: compute_uncorrupted_regret(trace),
            corruption_spent,
            per_arm_corruption,
        }
    }
}

/// Predicted regret contribution of one arm, constants not normative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundContribution {
    pub arm: usize,
    pub gap: f64,
    pub actual_regret: f64,
    pub pseudo_regret: f64,
}

/// Bound predictors for every non-optimal arm index, with the gap dependence
/// replaced by `min(1/gap, sqrt(T))` (actual) and `min(1/gap, gap * T)` (pseudo).
///
/// `horizon` is real-valued so the closed form can be evaluated off the
/// integer grid.
pub fn bound_contributions(
    gaps: &[f64],
    optimal: usize,
    horizon: f64,
    corruption: f64,
    delta: f64,
) -> Vec<BoundContribution> {
    let k = gaps.len() as f64;
    let log_term = (k * horizon / delta).ln();
    let base = (k * corruption * log_term + horizon.ln()) * log_term;
    gaps.iter()
        .enumerate()
        .filter(|&(a, _)| a != optimal)
        .map(|(arm, &gap)| {
            let inv_gap = if gap > 0.0 { 1.0 / gap } else { f64::INFINITY };
            BoundContribution {
                arm,
                gap,
                actual_regret: base * inv_gap.min(horizon.sqrt()),
                pseudo_regret: base * inv_gap.min(gap * horizon),
            }
        })
        .collect()
}

pub fn theoretical_bound_report(
    instance: &BanditInstance,
    corruption: f64,
    delta: f64,
) -> Vec<BoundContribution> {
    bound_contributions(
        &instance.gaps(),
        instance.optimal_arm(),
        instance.horizon() as f64,
        corruption,
        delta,
    )
}
