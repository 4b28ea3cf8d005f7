use crate::error::{BanditError, Result};

use super::layer::LayerState;
use super::width::WidthRule;
use super::{Learner, PlaySource};

/// Round-robin over active arms with a pluggable confidence width.
#[derive(Debug, Clone)]
pub struct ActiveArmElimination {
    layer: LayerState,
    rule: WidthRule,
}

impl ActiveArmElimination {
    pub fn new(num_arms: usize, rule: WidthRule) -> Self {
        Self {
            layer: LayerState::new(num_arms),
            rule,
        }
    }

    pub fn layer(&self) -> &LayerState {
        &self.layer
    }
}

impl Learner for ActiveArmElimination {
    fn name(&self) -> &'static str {
        match self.rule {
            WidthRule::Enlarged { .. } => "enlarged_aae",
            _ => "plain_aae",
        }
    }

    fn num_arms(&self) -> usize {
        self.layer.num_arms()
    }

    fn distribution_into(&self, out: &mut [f64]) {
        out.fill(0.0);
        if let Some(a) = self.layer.select() {
            out[a] = 1.0;
        }
    }

    fn choose(&mut self, _u: f64) -> Result<usize> {
        self.layer
            .select()
            .ok_or_else(|| BanditError::Invariant("every arm eliminated".into()))
    }

    fn last_source(&self) -> PlaySource {
        PlaySource::Single
    }

    fn observe(&mut self, arm: usize, reward: f64) -> Result<()> {
        self.layer.record(arm, reward)?;
        let rule = self.rule;
        self.layer.elimination_sweep(|n| rule.width(n));
        Ok(())
    }

    fn is_eliminated(&self, arm: usize) -> bool {
        self.layer.is_inactive(arm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::width::elimination_threshold;

    #[test]
    fn point_mass_arms_eliminated_within_threshold() {
        let (k, horizon, delta) = (2, 10_000, 0.05);
        let mut aae = ActiveArmElimination::new(k, WidthRule::enlarged(0.0, k, horizon, delta));
        let bound = elimination_threshold(1.0, 0.0, k, horizon, delta).unwrap();
        let rewards = [1.0, 0.0];
        for _ in 0..horizon {
            let arm = aae.choose(0.0).unwrap();
            aae.observe(arm, rewards[arm]).unwrap();
            if aae.is_eliminated(1) {
                break;
            }
        }
        assert!(aae.is_eliminated(1));
        assert!(!aae.is_eliminated(0));
        assert!(aae.layer().pulls(1) <= bound);
    }

    #[test]
    fn round_robin_before_elimination() {
        let mut aae = ActiveArmElimination::new(3, WidthRule::basic(3, 100, 0.05));
        let mut order = Vec::new();
        for _ in 0..6 {
            let a = aae.choose(0.5).unwrap();
            order.push(a);
            aae.observe(a, 0.5).unwrap();
        }
        assert_eq!(order, vec![0, 1, 2, 0, 1, 2]);
    }
}
