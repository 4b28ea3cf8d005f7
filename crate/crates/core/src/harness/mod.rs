//! Seeded episodes, replication across seeds and aggregation.

pub mod config;
pub mod episode;
pub mod experiment;
pub mod presets;
pub mod stats;

pub use config::{default_checkpoints, ExperimentConfig, DEFAULT_DELTA};
pub use episode::{
    run_episode, CheckpointRecord, EpisodeEvents, EpisodeFailure, EpisodeOutcome, EpisodeResult,
    RegretSeries,
};
pub use experiment::{run_experiment, CheckpointAggregate, EventFrequencies, ExperimentReport};
pub use stats::{empirical_failure_rate, percentile_sorted, FailureRate, MetricSummary};
