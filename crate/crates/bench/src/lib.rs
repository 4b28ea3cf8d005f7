//! Shared fixtures for the criterion benchmarks.

use robust_bandits::{AdversarySpec, BanditInstance, ExperimentConfig, LearnerSpec};

pub fn learner_specs() -> Vec<LearnerSpec> {
    vec![
        LearnerSpec::PlainAae { delta: 0.05 },
        LearnerSpec::EnlargedAae { delta: 0.05, corruption: 20.0 },
        LearnerSpec::FastSlow { delta: 0.05, corruption: 100.0 },
        LearnerSpec::Multilayer { delta: 0.05 },
        LearnerSpec::Ucb,
        LearnerSpec::Exp3,
    ]
}

/// Single-episode config on Bernoulli(0.7, 0.5) with the prefix attack.
pub fn episode_config(learner: LearnerSpec, horizon: u64) -> ExperimentConfig {
    let instance = BanditInstance::bernoulli(&[0.7, 0.5], horizon).expect("valid instance");
    ExperimentConfig::new(
        learner.kind(),
        instance,
        learner,
        AdversarySpec::PrefixFlip { budget: (horizon / 50) as f64, gap: 0.2 },
    )
}
