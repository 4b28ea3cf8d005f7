//! Named scenarios used by `rbandit bench` and the acceptance suite.

use crate::adversary::AdversarySpec;
use crate::algorithms::LearnerSpec;
use crate::instance::BanditInstance;

use super::config::{ExperimentConfig, DEFAULT_DELTA};

pub const PRESETS: &[&str] = &[
    "stochastic-sanity",
    "attack-vs-aae",
    "attack-vs-multilayer",
    "optimal-survival",
    "suboptimal-pulls",
    "slow-corruption-tail",
    "ucb-attack",
];

const DELTA: f64 = DEFAULT_DELTA;

fn bernoulli(means: &[f64], horizon: u64) -> BanditInstance {
    BanditInstance::bernoulli(means, horizon).expect("preset instance is valid")
}

/// Multi-layer race on Bernoulli(0.7, 0.5) without corruption, T = 1e5.
pub fn stochastic_sanity() -> ExperimentConfig {
    ExperimentConfig::new(
        "stochastic-sanity",
        bernoulli(&[0.7, 0.5], 100_000),
        LearnerSpec::Multilayer { delta: DELTA },
        AdversarySpec::Null,
    )
    .with_seeds(1, 100)
    .with_checkpoints(&[25_000, 50_000])
}

fn prefix_attack(name: &str, learner: LearnerSpec) -> ExperimentConfig {
    ExperimentConfig::new(
        name,
        bernoulli(&[0.7, 0.5], 100_000),
        learner,
        AdversarySpec::PrefixFlip { budget: 2000.0, gap: 0.2 },
    )
    .with_seeds(2, 100)
    .with_checkpoints(&[25_000, 50_000])
}

/// Plain elimination against the prefix attack, gap 0.2, C = 2000, T = 1e5.
pub fn attack_vs_aae() -> ExperimentConfig {
    prefix_attack("attack-vs-aae", LearnerSpec::PlainAae { delta: DELTA })
}

/// Multi-layer race in the same scenario as [`attack_vs_aae`].
pub fn attack_vs_multilayer() -> ExperimentConfig {
    prefix_attack("attack-vs-multilayer", LearnerSpec::Multilayer { delta: DELTA })
}

/// Enlarged widths with C = 20 against a C = 20 targeted adversary, T = 1e4.
pub fn optimal_survival() -> ExperimentConfig {
    ExperimentConfig::new(
        "optimal-survival",
        bernoulli(&[0.7, 0.5], 10_000),
        LearnerSpec::EnlargedAae { delta: DELTA, corruption: 20.0 },
        AdversarySpec::TargetedOptimal { budget: 20.0, threshold: 0.5 },
    )
    .with_seeds(3, 2000)
}

/// Enlarged widths with C = 0 and no corruption, T = 1e4.
pub fn suboptimal_pulls() -> ExperimentConfig {
    ExperimentConfig::new(
        "suboptimal-pulls",
        bernoulli(&[0.7, 0.5], 10_000),
        LearnerSpec::EnlargedAae { delta: DELTA, corruption: 0.0 },
        AdversarySpec::Null,
    )
    .with_seeds(4, 2000)
}

/// Fast-slow race with C = 1000 against an adversary that spends its whole
/// budget on the optimal arm, T = 1e5.
pub fn slow_corruption_tail() -> ExperimentConfig {
    ExperimentConfig::new(
        "slow-corruption-tail",
        bernoulli(&[0.7, 0.5], 100_000),
        LearnerSpec::FastSlow { delta: DELTA, corruption: 1000.0 },
        AdversarySpec::TargetedOptimal { budget: 1000.0, threshold: 0.0 },
    )
    .with_seeds(5, 2000)
}

/// UCB1 against the prefix attack, gap 1/6, C = 3000, T = 1e5.
pub fn ucb_attack() -> ExperimentConfig {
    let gap = 1.0 / 6.0;
    ExperimentConfig::new(
        "ucb-attack",
        bernoulli(&[0.5 + gap, 0.5], 100_000),
        LearnerSpec::Ucb,
        AdversarySpec::PrefixFlip { budget: 3000.0, gap },
    )
    .with_seeds(6, 200)
}

pub fn preset(name: &str) -> Option<ExperimentConfig> {
    Some(match name {
        "stochastic-sanity" => stochastic_sanity(),
        "attack-vs-aae" => attack_vs_aae(),
        "attack-vs-multilayer" => attack_vs_multilayer(),
        "optimal-survival" => optimal_survival(),
        "suboptimal-pulls" => suboptimal_pulls(),
        "slow-corruption-tail" => slow_corruption_tail(),
        "ucb-attack" => ucb_attack(),
        _ => return None,
    })
}
