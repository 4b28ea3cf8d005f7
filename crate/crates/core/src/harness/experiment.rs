use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::LearnerSpec;
use crate::error::{BanditError, Result};

use super::config::ExperimentConfig;
use super::episode::{run_episode, CheckpointRecord, EpisodeOutcome, EpisodeResult};
use super::stats::{empirical_failure_rate, FailureRate, MetricSummary};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointAggregate {
    pub t: u64,
    pub episodes: u64,
    pub cum_regret: MetricSummary,
    pub cum_uncorrupted_regret: MetricSummary,
    pub cum_pseudo_regret_gap: MetricSummary,
    pub corruption_spent: MetricSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventFrequencies {
    /// Over completed episodes.
    pub optimal_arm_eliminated: Option<FailureRate>,
    /// Over all episodes.
    pub budget_exceeded: FailureRate,
    /// Threshold `ln(1/delta) + 3` on slow-instance corruption, fast-slow only.
    pub slow_corruption_threshold: Option<f64>,
    pub slow_corruption_exceeded: Option<FailureRate>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub name: String,
    pub learner: String,
    pub adversary: String,
    pub horizon: u64,
    /// In the order of `ExperimentConfig::episodes`.
    pub outcomes: Vec<EpisodeOutcome>,
    /// Failed episodes are left out.
    pub aggregates: Vec<CheckpointAggregate>,
    pub events: EventFrequencies,
}

impl ExperimentReport {
    pub fn completed(&self) -> impl Iterator<Item = &EpisodeResult> {
        self.outcomes.iter().filter_map(EpisodeOutcome::ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EpisodeOutcome> {
        self.outcomes.iter().filter(|o| o.result.is_err())
    }

    pub fn all_completed(&self) -> bool {
        self.failures().next().is_none()
    }

    /// One value per completed episode at checkpoint `t`.
    pub fn metric_at(&self, t: u64, metric: impl Fn(&CheckpointRecord) -> f64) -> Vec<f64> {
        self.completed()
            .filter_map(|r| r.series.at(t).map(&metric))
            .collect()
    }

    pub fn aggregate_at(&self, t: u64) -> Option<&CheckpointAggregate> {
        self.aggregates.iter().find(|a| a.t == t)
    }
}

/// Runs every episode of `config`. Output does not depend on the worker count.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let run_all = || -> Result<Vec<EpisodeOutcome>> {
        config
            .episodes
            .par_iter()
            .map(|&ep| run_episode(config, ep))
            .collect()
    };
    let outcomes = match config.workers {
        Some(1) => config
            .episodes
            .iter()
            .map(|&ep| run_episode(config, ep))
            .collect::<Result<Vec<_>>>()?,
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| BanditError::config("workers", e.to_string()))?
            .install(run_all)?,
        None => run_all()?,
    };
    Ok(aggregate(config, outcomes))
}

pub fn aggregate(config: &ExperimentConfig, outcomes: Vec<EpisodeOutcome>) -> ExperimentReport {
    let completed: Vec<&EpisodeResult> = outcomes.iter().filter_map(EpisodeOutcome::ok).collect();

    let mut aggregates = Vec::new();
    for &t in &config.checkpoints {
        let rows: Vec<&CheckpointRecord> = completed.iter().filter_map(|r| r.series.at(t)).collect();
        let summary = |f: fn(&CheckpointRecord) -> f64| {
            MetricSummary::from_values(&rows.iter().map(|r| f(r)).collect::<Vec<_>>())
        };
        if let (Some(a), Some(b), Some(c), Some(d)) = (
            summary(|r| r.cum_regret),
            summary(|r| r.cum_uncorrupted_regret),
            summary(|r| r.cum_pseudo_regret_gap),
            summary(|r| r.corruption_spent),
        ) {
            aggregates.push(CheckpointAggregate {
                t,
                episodes: rows.len() as u64,
                cum_regret: a,
                cum_uncorrupted_regret: b,
                cum_pseudo_regret_gap: c,
                corruption_spent: d,
            });
        }
    }

    let budget_flags: Vec<bool> = outcomes
        .iter()
        .map(|o| matches!(&o.result, Err(f) if f.budget_exceeded))
        .collect();
    let eliminated: Vec<bool> = completed.iter().map(|r| r.events.optimal_arm_eliminated).collect();
    let slow_threshold = match config.learner {
        LearnerSpec::FastSlow { delta, .. } => Some((1.0 / delta).ln() + 3.0),
        _ => None,
    };
    let slow_exceeded = slow_threshold.filter(|_| !completed.is_empty()).map(|thr| {
        let flags: Vec<bool> = completed
            .iter()
            .map(|r| r.events.slow_observed_corruption > thr)
            .collect();
        empirical_failure_rate(&flags)
    });

    ExperimentReport {
        name: config.name.clone(),
        learner: config.learner.kind().to_string(),
        adversary: config.adversary.kind().to_string(),
        horizon: config.horizon(),
        aggregates,
        events: EventFrequencies {
            optimal_arm_eliminated: (!eliminated.is_empty()).then(|| empirical_failure_rate(&eliminated)),
            budget_exceeded: empirical_failure_rate(&budget_flags),
            slow_corruption_threshold: slow_threshold,
            slow_corruption_exceeded: slow_exceeded,
        },
        outcomes,
    }
}
