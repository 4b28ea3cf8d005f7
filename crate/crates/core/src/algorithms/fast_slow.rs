//! Two coupled elimination instances for a known corruption level `C`: the
//! fast one is played with probability `1 - 1/C`, the slow one with `1/C` and
//! wider intervals. Slow eliminations are copied into the fast instance.

use crate::error::{BanditError, Result};

use super::layer::LayerState;
use super::width::WidthRule;
use super::{Learner, PlaySource};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Instance {
    Fast,
    Slow,
}

/// Slow with probability exactly `1/C` (`u < 1/C`).
pub fn fastslow_sample_instance(u: f64, corruption: f64) -> Instance {
    if u < 1.0 / corruption {
        Instance::Slow
    } else {
        Instance::Fast
    }
}

#[derive(Debug, Clone)]
pub struct FastSlow {
    fast: LayerState,
    slow: LayerState,
    corruption: f64,
    fast_width: WidthRule,
    slow_width: WidthRule,
    last: PlaySource,
}

impl FastSlow {
    pub fn new(num_arms: usize, horizon: u64, delta: f64, corruption: f64) -> Result<Self> {
        if corruption.is_nan() || corruption < 2.0 {
            return Err(BanditError::config(
                "learner.corruption",
                format!("fast_slow requires C >= 2, got {corruption}"),
            ));
        }
        Ok(Self {
            fast: LayerState::new(num_arms),
            slow: LayerState::new(num_arms),
            corruption,
            fast_width: WidthRule::basic(num_arms, horizon, delta),
            slow_width: WidthRule::slow(num_arms, horizon, delta),
            last: PlaySource::Fast,
        })
    }

    pub fn fast(&self) -> &LayerState {
        &self.fast
    }

    pub fn slow(&self) -> &LayerState {
        &self.slow
    }

    pub fn fast_mut(&mut self) -> &mut LayerState {
        &mut self.fast
    }

    pub fn slow_mut(&mut self) -> &mut LayerState {
        &mut self.slow
    }

    fn fallback_arm(&self) -> Option<usize> {
        self.slow.first_active()
    }

    fn play_for(&self, instance: Instance) -> Result<(usize, PlaySource)> {
        let layer = match instance {
            Instance::Fast => &self.fast,
            Instance::Slow => &self.slow,
        };
        if let Some(arm) = layer.select() {
            let source = match instance {
                Instance::Fast => PlaySource::Fast,
                Instance::Slow => PlaySource::Slow,
            };
            return Ok((arm, source));
        }
        self.fallback_arm()
            .map(|arm| (arm, PlaySource::Fallback))
            .ok_or_else(|| BanditError::Invariant("fast and slow instances both empty".into()))
    }
}

impl Learner for FastSlow {
    fn name(&self) -> &'static str {
        "fast_slow"
    }

    fn num_arms(&self) -> usize {
        self.fast.num_arms()
    }

    fn distribution_into(&self, out: &mut [f64]) {
        out.fill(0.0);
        let p_slow = 1.0 / self.corruption;
        for (instance, p) in [(Instance::Fast, 1.0 - p_slow), (Instance::Slow, p_slow)] {
            if let Ok((arm, _)) = self.play_for(instance) {
                out[arm] += p;
            }
        }
    }

    fn choose(&mut self, u: f64) -> Result<usize> {
        let (arm, source) = self.play_for(fastslow_sample_instance(u, self.corruption))?;
        self.last = source;
        Ok(arm)
    }

    fn last_source(&self) -> PlaySource {
        self.last
    }

    fn observe(&mut self, arm: usize, reward: f64) -> Result<()> {
        match self.last {
            PlaySource::Fast => {
                self.fast.record(arm, reward)?;
                let rule = self.fast_width;
                self.fast.elimination_sweep(|n| rule.width(n));
            }
            PlaySource::Slow => {
                self.slow.record(arm, reward)?;
                let rule = self.slow_width;
                for gone in self.slow.elimination_sweep(|n| rule.width(n)) {
                    self.fast.eliminate(gone);
                }
            }
            _ => crate::mean::check_reward(reward)?,
        }
        Ok(())
    }

    fn is_eliminated(&self, arm: usize) -> bool {
        self.slow.is_inactive(arm)
    }

    fn num_instances(&self) -> usize {
        2
    }

    fn check_invariants(&self) -> Result<()> {
        for a in 0..self.num_arms() {
            if self.slow.is_inactive(a) && !self.fast.is_inactive(a) {
                return Err(BanditError::Invariant(format!(
                    "arm {a} eliminated by the slow instance but active in the fast one"
                )));
            }
        }
        if !self.slow.has_active() {
            return Err(BanditError::Invariant("slow instance has no active arm".into()));
        }
        Ok(())
    }
}
