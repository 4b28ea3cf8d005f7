//! Experiment config files (TOML, or JSON when the extension is `.json`).
//!
//! ```toml
//! name = "attack"            # optional, defaults to the file stem
//! horizon = 100000
//! master_seed = 7            # default 0
//! seed_count = 20            # default 1
//! checkpoints = [50000]      # default: powers of two, T is always appended
//! workers = 4                # optional
//!
//! [instance]
//! arms = [{ bernoulli = 0.7 }, { bernoulli = 0.5 }]
//!
//! [learner]
//! kind = "multilayer"        # plain_aae | enlarged_aae | fast_slow | multilayer | ucb | exp3
//! delta = 0.05               # default 0.05
//! corruption = 20.0          # enlarged_aae and fast_slow only
//!
//! [adversary]
//! kind = "prefix_flip"       # null | prefix_flip | identical_arms | targeted_optimal
//! budget = 2000.0
//! gap = 0.2                  # prefix_flip
//! threshold = 0.5            # targeted_optimal: min P(optimal arm) to attack
//! ```

use std::path::Path;

use robust_bandits::harness::{default_checkpoints, DEFAULT_DELTA};
use robust_bandits::{AdversarySpec, ArmDistribution, BanditInstance, ExperimentConfig, LearnerSpec};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub name: Option<String>,
    pub horizon: Option<u64>,
    pub master_seed: Option<u64>,
    pub seed_count: Option<u64>,
    pub checkpoints: Option<Vec<u64>>,
    pub workers: Option<usize>,
    pub instance: Option<RawInstance>,
    pub learner: Option<RawLearner>,
    pub adversary: Option<RawAdversary>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInstance {
    pub arms: Vec<ArmDistribution>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawLearner {
    pub kind: String,
    pub delta: Option<f64>,
    pub corruption: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAdversary {
    pub kind: String,
    pub budget: Option<f64>,
    pub gap: Option<f64>,
    pub threshold: Option<f64>,
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub horizon: Option<u64>,
    pub seed_count: Option<u64>,
    pub master_seed: Option<u64>,
    pub learner: Option<String>,
    pub adversary: Option<String>,
    pub budget: Option<f64>,
    pub delta: Option<f64>,
    pub workers: Option<usize>,
}

impl RawConfig {
    pub fn apply(&mut self, o: &Overrides) {
        if let Some(h) = o.horizon {
            self.horizon = Some(h);
            // explicit checkpoints past a shortened horizon are dropped
            if let Some(cps) = self.checkpoints.as_mut() {
                cps.retain(|&t| t <= h);
            }
        }
        if o.seed_count.is_some() {
            self.seed_count = o.seed_count;
        }
        if o.master_seed.is_some() {
            self.master_seed = o.master_seed;
        }
        if o.workers.is_some() {
            self.workers = o.workers;
        }
        if let Some(kind) = &o.learner {
            self.learner.get_or_insert_with(RawLearner::default).kind = kind.clone();
        }
        if let Some(kind) = &o.adversary {
            self.adversary.get_or_insert_with(RawAdversary::default).kind = kind.clone();
        }
        if let Some(delta) = o.delta {
            self.learner.get_or_insert_with(RawLearner::default).delta = Some(delta);
        }
        if let Some(budget) = o.budget {
            self.adversary.get_or_insert_with(RawAdversary::default).budget = Some(budget);
        }
    }

    /// Validates and converts into a harness config.
    pub fn resolve(&self, default_name: &str) -> Result<ExperimentConfig, CliError> {
        let horizon = self.horizon.ok_or_else(|| CliError::config("horizon", "missing"))?;
        if horizon == 0 {
            return Err(CliError::config("horizon", "must be positive"));
        }
        let raw_instance = self
            .instance
            .as_ref()
            .ok_or_else(|| CliError::config("instance", "missing section"))?;
        if raw_instance.arms.len() < 2 {
            return Err(CliError::config("instance.arms", "need at least 2 arms"));
        }
        for (i, arm) in raw_instance.arms.iter().enumerate() {
            let v = arm.mean();
            if !(0.0..=1.0).contains(&v) {
                return Err(CliError::config(
                    format!("instance.arms[{i}]"),
                    format!("parameter {v} outside [0, 1]"),
                ));
            }
        }
        let instance = BanditInstance::new(raw_instance.arms.clone(), horizon)?;

        let learner = resolve_learner(
            self.learner
                .as_ref()
                .ok_or_else(|| CliError::config("learner", "missing section"))?,
        )?;
        let adversary = match &self.adversary {
            Some(raw) => resolve_adversary(raw)?,
            None => AdversarySpec::Null,
        };

        let seed_count = self.seed_count.unwrap_or(1);
        if seed_count == 0 {
            return Err(CliError::config("seed_count", "must be at least 1"));
        }
        let mut checkpoints = match &self.checkpoints {
            Some(list) => {
                let mut cps: Vec<u64> = list.clone();
                if cps.iter().any(|&t| t == 0 || t > horizon) {
                    return Err(CliError::config("checkpoints", format!("rounds must be in [1, {horizon}]")));
                }
                cps.sort_unstable();
                cps.dedup();
                cps
            }
            None => default_checkpoints(horizon),
        };
        if checkpoints.last() != Some(&horizon) {
            checkpoints.push(horizon);
        }

        let mut config = ExperimentConfig::new(
            self.name.clone().unwrap_or_else(|| default_name.to_string()),
            instance,
            learner,
            adversary,
        )
        .with_seeds(self.master_seed.unwrap_or(0), seed_count);
        config.checkpoints = checkpoints;
        config.workers = self.workers;
        config.validate()?;
        Ok(config)
    }
}

fn resolve_learner(raw: &RawLearner) -> Result<LearnerSpec, CliError> {
    let delta = raw.delta.unwrap_or(DEFAULT_DELTA);
    let corruption = || {
        raw.corruption
            .ok_or_else(|| CliError::config("learner.corruption", format!("required for {}", raw.kind)))
    };
    let spec = match raw.kind.as_str() {
        "plain_aae" => LearnerSpec::PlainAae { delta },
        "enlarged_aae" => LearnerSpec::EnlargedAae { delta, corruption: corruption()? },
        "fast_slow" => LearnerSpec::FastSlow { delta, corruption: corruption()? },
        "multilayer" => LearnerSpec::Multilayer { delta },
        "ucb" => LearnerSpec::Ucb,
        "exp3" => LearnerSpec::Exp3,
        other => return Err(CliError::config("learner.kind", format!("unknown learner `{other}`"))),
    };
    if raw.corruption.is_some() && !matches!(spec, LearnerSpec::EnlargedAae { .. } | LearnerSpec::FastSlow { .. }) {
        return Err(CliError::config("learner.corruption", format!("not used by {}", raw.kind)));
    }
    spec.validate()?;
    Ok(spec)
}

fn resolve_adversary(raw: &RawAdversary) -> Result<AdversarySpec, CliError> {
    let need = |field: &str, value: Option<f64>| {
        value.ok_or_else(|| CliError::config(format!("adversary.{field}"), format!("required for {}", raw.kind)))
    };
    let unused = |field: &str, value: Option<f64>| match value {
        Some(_) => Err(CliError::config(format!("adversary.{field}"), format!("not used by {}", raw.kind))),
        None => Ok(()),
    };
    Ok(match raw.kind.as_str() {
        "null" => {
            unused("budget", raw.budget)?;
            unused("gap", raw.gap)?;
            unused("threshold", raw.threshold)?;
            AdversarySpec::Null
        }
        "prefix_flip" => {
            unused("threshold", raw.threshold)?;
            AdversarySpec::PrefixFlip { budget: need("budget", raw.budget)?, gap: need("gap", raw.gap)? }
        }
        "identical_arms" => {
            unused("gap", raw.gap)?;
            unused("threshold", raw.threshold)?;
            AdversarySpec::IdenticalArms { budget: need("budget", raw.budget)? }
        }
        "targeted_optimal" => {
            unused("gap", raw.gap)?;
            AdversarySpec::TargetedOptimal {
                budget: need("budget", raw.budget)?,
                threshold: need("threshold", raw.threshold)?,
            }
        }
        other => return Err(CliError::config("adversary.kind", format!("unknown adversary `{other}`"))),
    })
}

/// Reads a config file without resolving it.
pub fn read_raw(path: &Path) -> Result<RawConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    if is_json {
        serde_json::from_str(&text).map_err(|e| CliError::config(json_field(&e.to_string()), e.to_string()))
    } else {
        toml::from_str(&text).map_err(|e| CliError::config(toml_field(&e), e.message().to_string()))
    }
}

fn toml_field(err: &toml::de::Error) -> String {
    backticked(err.message()).unwrap_or_else(|| "config".to_string())
}

fn json_field(message: &str) -> String {
    backticked(message).unwrap_or_else(|| "config".to_string())
}

/// First backtick-quoted name in a serde message, e.g. "unknown field `x`".
fn backticked(message: &str) -> Option<String> {
    let start = message.find('`')? + 1;
    let len = message[start..].find('`')?;
    Some(message[start..start + len].to_string())
}

pub fn parse_config(path: &Path, overrides: &Overrides) -> Result<ExperimentConfig, CliError> {
    let mut raw = read_raw(path)?;
    raw.apply(overrides);
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("experiment");
    raw.resolve(stem)
}

/// Applies overrides to an already-resolved preset.
pub fn override_preset(mut config: ExperimentConfig, o: &Overrides) -> Result<ExperimentConfig, CliError> {
    let mut raw = RawConfig {
        name: Some(config.name.clone()),
        horizon: Some(config.horizon()),
        master_seed: Some(config.master_seed),
        seed_count: Some(config.episodes.len() as u64),
        checkpoints: Some(config.checkpoints.clone()),
        workers: config.workers,
        instance: Some(RawInstance { arms: config.instance.arms().to_vec() }),
        learner: Some(learner_to_raw(&config.learner)),
        adversary: Some(adversary_to_raw(&config.adversary)),
    };
    raw.apply(o);
    let name = std::mem::take(&mut config.name);
    raw.resolve(&name)
}

fn learner_to_raw(spec: &LearnerSpec) -> RawLearner {
    let corruption = match *spec {
        LearnerSpec::EnlargedAae { corruption, .. } | LearnerSpec::FastSlow { corruption, .. } => Some(corruption),
        _ => None,
    };
    RawLearner { kind: spec.kind().to_string(), delta: spec.delta(), corruption }
}

fn adversary_to_raw(spec: &AdversarySpec) -> RawAdversary {
    let mut raw = RawAdversary { kind: spec.kind().to_string(), ..Default::default() };
    match *spec {
        AdversarySpec::Null => {}
        AdversarySpec::PrefixFlip { budget, gap } => {
            raw.budget = Some(budget);
            raw.gap = Some(gap);
        }
        AdversarySpec::IdenticalArms { budget } => raw.budget = Some(budget),
        AdversarySpec::TargetedOptimal { budget, threshold } => {
            raw.budget = Some(budget);
            raw.threshold = Some(threshold);
        }
    }
    raw
}
