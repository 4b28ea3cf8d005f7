//! A single seeded run of the protocol.
//!
//! Round order: learner distribution, stochastic draw, adversary corruption,
//! arm draw, learner update.

use serde::{Deserialize, Serialize};

use crate::adversary::AdversaryContext;
use crate::algorithms::PlaySource;
use crate::environment::Environment;
use crate::error::{BanditError, Result};
use crate::ledger::CorruptionLedger;
use crate::regret::{compute_positive_regret, EpisodeTrace, RegretReport, RoundRecord};
use crate::rng::{Purpose, SeededRng};

use super::config::ExperimentConfig;

/// Cumulative metrics at one checkpoint.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointRecord {
    pub t: u64,
    pub cum_regret: f64,
    pub cum_uncorrupted_regret: f64,
    pub cum_pseudo_regret_gap: f64,
    pub corruption_spent: f64,
    pub arm_pulls: Vec<u64>,
    /// Rounds served by each layer or instance; empty for single-instance learners.
    pub layer_pulls: Vec<u64>,
    pub fallback_rounds: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RegretSeries {
    pub checkpoints: Vec<CheckpointRecord>,
}

impl RegretSeries {
    pub fn at(&self, t: u64) -> Option<&CheckpointRecord> {
        self.checkpoints.iter().find(|c| c.t == t)
    }

    pub fn last(&self) -> Option<&CheckpointRecord> {
        self.checkpoints.last()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeEvents {
    /// The learner's most trustworthy instance dropped the optimal arm.
    pub optimal_arm_eliminated: bool,
    /// Corruption on the played arm summed over rounds served by the slow
    /// instance of the fast-slow race.
    pub slow_observed_corruption: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeResult {
    pub series: RegretSeries,
    pub report: RegretReport,
    pub events: EpisodeEvents,
    pub trace: Option<EpisodeTrace>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeFailure {
    pub round: u64,
    pub reason: String,
    pub budget_exceeded: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpisodeOutcome {
    pub episode: u64,
    pub result: std::result::Result<EpisodeResult, EpisodeFailure>,
}

impl EpisodeOutcome {
    pub fn ok(&self) -> Option<&EpisodeResult> {
        self.result.as_ref().ok()
    }
}

struct Tally {
    corrupted_sums: Vec<f64>,
    stochastic_sums: Vec<f64>,
    obtained: f64,
    obtained_stochastic: f64,
    pulls: Vec<u64>,
    layer_pulls: Vec<u64>,
    fallback_rounds: u64,
}

impl Tally {
    fn regret(&self) -> f64 {
        max(&self.corrupted_sums) - self.obtained
    }

    fn uncorrupted_regret(&self) -> f64 {
        max(&self.stochastic_sums) - self.obtained_stochastic
    }

    fn pseudo_regret(&self, gaps: &[f64]) -> f64 {
        self.pulls.iter().zip(gaps).map(|(&n, g)| n as f64 * g).sum()
    }
}

fn max(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Runs one episode. Deterministic given `(config, episode)`.
pub fn run_episode(config: &ExperimentConfig, episode: u64) -> Result<EpisodeOutcome> {
    config.validate()?;
    let instance = &config.instance;
    let k = instance.num_arms();
    let horizon = instance.horizon();
    let gaps = instance.gaps();
    let optimal = instance.optimal_arm();

    let mut learner = config.learner.build(k, horizon)?;
    let mut adversary = config.adversary.build(instance, config.master_seed, episode)?;
    let mut env = Environment::new(instance.clone(), config.master_seed, episode);
    let mut learner_rng = SeededRng::new(config.master_seed, episode, Purpose::Learner, 1);
    let mut ledger = CorruptionLedger::new(adversary.budget(), k);

    let keep_history = config.keep_traces || adversary.needs_history();
    let mut history: Vec<RoundRecord> = Vec::new();

    let layer_slots = learner.num_instances();
    let mut tally = Tally {
        corrupted_sums: vec![0.0; k],
        stochastic_sums: vec![0.0; k],
        obtained: 0.0,
        obtained_stochastic: 0.0,
        pulls: vec![0; k],
        layer_pulls: vec![0; layer_slots],
        fallback_rounds: 0,
    };
    let mut slow_observed = 0.0;

    let mut w = vec![0.0; k];
    let mut stochastic = vec![0.0; k];
    let mut corrupted = vec![0.0; k];
    let mut series = RegretSeries::default();
    let mut next_checkpoint = config.checkpoints.iter().peekable();

    let fail = |round: u64, err: BanditError| EpisodeOutcome {
        episode,
        result: Err(EpisodeFailure {
            round,
            budget_exceeded: matches!(err, BanditError::BudgetExceeded { .. }),
            reason: err.to_string(),
        }),
    };

    for t in 1..=horizon {
        learner.distribution_into(&mut w);
        env.draw_round_into(t, &mut stochastic);
        corrupted.copy_from_slice(&stochastic);
        {
            let ctx = AdversaryContext {
                round: t,
                stochastic_rewards: &stochastic,
                history: &history,
                learner_distribution: &w,
                ledger: &ledger,
            };
            adversary.corrupt(&ctx, &mut corrupted);
        }
        if let Some(&bad) = corrupted.iter().find(|r| !(0.0..=1.0).contains(*r)) {
            return Ok(fail(t, BanditError::InvalidReward(bad)));
        }
        if let Err(err) = ledger.charge(&stochastic, &corrupted) {
            return Ok(fail(t, err));
        }

        let u = learner_rng.uniform_at(t, 0);
        let arm = match learner.choose(u) {
            Ok(arm) => arm,
            Err(err) => return Ok(fail(t, err)),
        };
        let reward = corrupted[arm];
        if let Err(err) = learner.observe(arm, reward) {
            return Ok(fail(t, err));
        }
        if config.check_invariants {
            if let Err(err) = learner.check_invariants() {
                return Ok(fail(t, err));
            }
        }

        match learner.last_source() {
            PlaySource::Layer(l) => tally.layer_pulls[l - 1] += 1,
            PlaySource::Fast => tally.layer_pulls[0] += 1,
            PlaySource::Slow => {
                tally.layer_pulls[1] += 1;
                slow_observed += (reward - stochastic[arm]).abs();
            }
            PlaySource::Fallback => tally.fallback_rounds += 1,
            PlaySource::Single => {}
        }
        for a in 0..k {
            tally.corrupted_sums[a] += corrupted[a];
            tally.stochastic_sums[a] += stochastic[a];
        }
        tally.obtained += reward;
        tally.obtained_stochastic += stochastic[arm];
        tally.pulls[arm] += 1;

        if keep_history {
            history.push(RoundRecord {
                stochastic_rewards: stochastic.clone(),
                corrupted_rewards: corrupted.clone(),
                learner_distribution: w.clone(),
                chosen_arm: arm,
                obtained_reward: reward,
            });
        }

        if next_checkpoint.peek() == Some(&&t) {
            next_checkpoint.next();
            series.checkpoints.push(CheckpointRecord {
                t,
                cum_regret: tally.regret(),
                cum_uncorrupted_regret: tally.uncorrupted_regret(),
                cum_pseudo_regret_gap: tally.pseudo_regret(&gaps),
                corruption_spent: ledger.total_spent(),
                arm_pulls: tally.pulls.clone(),
                layer_pulls: tally.layer_pulls.clone(),
                fallback_rounds: tally.fallback_rounds,
            });
        }
    }

    let regret = tally.regret();
    let report = RegretReport {
        regret,
        pseudo_regret_gap_weighted: tally.pseudo_regret(&gaps),
        positive_regret: compute_positive_regret(regret),
        uncorrupted_regret: tally.uncorrupted_regret(),
        corruption_spent: ledger.total_spent(),
        per_arm_corruption: ledger.per_arm_spent().to_vec(),
    };
    Ok(EpisodeOutcome {
        episode,
        result: Ok(EpisodeResult {
            series,
            report,
            events: EpisodeEvents {
                optimal_arm_eliminated: learner.is_eliminated(optimal),
                slow_observed_corruption: slow_observed,
            },
            trace: config.keep_traces.then_some(EpisodeTrace { rounds: history }),
        }),
    })
}
