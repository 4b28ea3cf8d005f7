//! Learners. Each exposes its arm distribution `w^t` before the round, draws
//! the arm from exactly one uniform variate, then observes the played arm's
//! reward.

pub mod aae;
pub mod exp3;
pub mod fast_slow;
pub mod layer;
pub mod multilayer;
pub mod ucb;
pub mod width;

use serde::{Deserialize, Serialize};

use crate::error::{BanditError, Result};

pub use aae::ActiveArmElimination;
pub use exp3::Exp3;
pub use fast_slow::{fastslow_sample_instance, FastSlow, Instance};
pub use layer::{sweep_dominated, LayerState};
pub use multilayer::{layer_probabilities, layer_sample, num_layers, MultiLayer};
pub use ucb::Ucb1;
pub use width::{
    elimination_threshold, width_basic, width_enlarged, width_layer, width_slow, WidthRule,
};

/// Which internal component served the last round.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaySource {
    /// Learners without internal instances.
    Single,
    Fast,
    Slow,
    /// 1-based layer index.
    Layer(usize),
    /// No statistics were updated.
    Fallback,
}

pub trait Learner: Send {
    fn name(&self) -> &'static str;

    fn num_arms(&self) -> usize;

    fn distribution_into(&self, out: &mut [f64]);

    fn distribution(&self) -> Vec<f64> {
        let mut w = vec![0.0; self.num_arms()];
        self.distribution_into(&mut w);
        w
    }

    /// Draws `a^t` from `w^t` using the uniform `u`.
    fn choose(&mut self, u: f64) -> Result<usize>;

    fn last_source(&self) -> PlaySource;

    fn observe(&mut self, arm: usize, reward: f64) -> Result<()>;

    /// Whether the learner's most trustworthy instance has eliminated `arm`.
    fn is_eliminated(&self, _arm: usize) -> bool {
        false
    }

    /// Internal instances whose rounds are tallied separately: the layers of
    /// the multi-layer race, or fast then slow for the fast-slow race.
    fn num_instances(&self) -> usize {
        0
    }

    fn check_invariants(&self) -> Result<()> {
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum LearnerSpec {
    /// Elimination with the basic `sqrt(ln(8KT/delta)/n)` width.
    PlainAae { delta: f64 },
    EnlargedAae { delta: f64, corruption: f64 },
    FastSlow { delta: f64, corruption: f64 },
    Multilayer { delta: f64 },
    Ucb,
    Exp3,
}

impl LearnerSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            LearnerSpec::PlainAae { .. } => "plain_aae",
            LearnerSpec::EnlargedAae { .. } => "enlarged_aae",
            LearnerSpec::FastSlow { .. } => "fast_slow",
            LearnerSpec::Multilayer { .. } => "multilayer",
            LearnerSpec::Ucb => "ucb",
            LearnerSpec::Exp3 => "exp3",
        }
    }

    pub fn delta(&self) -> Option<f64> {
        match *self {
            LearnerSpec::PlainAae { delta }
            | LearnerSpec::EnlargedAae { delta, .. }
            | LearnerSpec::FastSlow { delta, .. }
            | LearnerSpec::Multilayer { delta } => Some(delta),
            LearnerSpec::Ucb | LearnerSpec::Exp3 => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(delta) = self.delta() {
            if !(delta > 0.0 && delta < 1.0) {
                return Err(BanditError::config("learner.delta", format!("delta must be in (0, 1), got {delta}")));
            }
        }
        match *self {
            LearnerSpec::EnlargedAae { corruption, .. } if !(corruption >= 0.0 && corruption.is_finite()) => {
                Err(BanditError::config("learner.corruption", format!("C must be finite and >= 0, got {corruption}")))
            }
            LearnerSpec::FastSlow { corruption, .. } if !(corruption >= 2.0 && corruption.is_finite()) => {
                Err(BanditError::config("learner.corruption", format!("fast_slow requires C >= 2, got {corruption}")))
            }
            _ => Ok(()),
        }
    }

    pub fn build(&self, num_arms: usize, horizon: u64) -> Result<Box<dyn Learner>> {
        self.validate()?;
        Ok(match *self {
            LearnerSpec::PlainAae { delta } => Box::new(ActiveArmElimination::new(
                num_arms,
                WidthRule::basic(num_arms, horizon, delta),
            )),
            LearnerSpec::EnlargedAae { delta, corruption } => Box::new(ActiveArmElimination::new(
                num_arms,
                WidthRule::enlarged(corruption, num_arms, horizon, delta),
            )),
            LearnerSpec::FastSlow { delta, corruption } => {
                Box::new(FastSlow::new(num_arms, horizon, delta, corruption)?)
            }
            LearnerSpec::Multilayer { delta } => Box::new(MultiLayer::new(num_arms, horizon, delta)),
            LearnerSpec::Ucb => Box::new(Ucb1::new(num_arms)),
            LearnerSpec::Exp3 => Box::new(Exp3::new(num_arms, horizon)),
        })
    }
}
