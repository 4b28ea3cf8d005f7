//! Stochastic multi-armed bandits with adversarial corruptions.
//!
//! The crate bundles everything needed to run corruption experiments end to end:
//!
//! * [`instance`], [`mean`], [`regret`], [`ledger`]: shared domain types and
//!   regret accounting.
//! * [`rng`] and [`environment`]: counter-keyed random streams and the per-round
//!   stochastic reward draw.
//! * [`adversary`]: budget-tracked corruption strategies.
//! * [`algorithms`]: active arm elimination and its robust variants (enlarged
//!   widths, the fast-slow race and the multi-layer race) plus UCB1/EXP3
//!   baselines.
//! * [`harness`]: seeded episodes, replication across seeds and aggregation.

pub mod adversary;
pub mod algorithms;
pub mod environment;
pub mod error;
pub mod harness;
pub mod instance;
pub mod ledger;
pub mod mean;
pub mod regret;
pub mod rng;

pub use adversary::{Adversary, AdversaryContext, AdversarySpec};
pub use algorithms::{Learner, LearnerSpec, PlaySource};
pub use error::{BanditError, Result};
pub use harness::{
    empirical_failure_rate, run_episode, run_experiment, EpisodeOutcome, ExperimentConfig,
    ExperimentReport, RegretSeries,
};
pub use instance::{ArmDistribution, BanditInstance};
pub use ledger::{Budget, CorruptionLedger};
pub use mean::{running_mean_update, RunningMean};
pub use regret::{EpisodeTrace, RegretReport, RoundRecord};
pub use rng::{Purpose, SeededRng};
