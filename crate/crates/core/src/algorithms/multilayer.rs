//! Multi-layer elimination race, agnostic to the corruption level.
//!
//! Layer `l` (1-based) is played with probability `2^-l`, layer 1 also takes
//! the leftover mass. An arm eliminated in layer `l` is eliminated in every
//! layer `l' <= l`, so `I^1 ⊇ I^2 ⊇ ... ⊇ I^L` holds throughout. A sampled
//! layer with nothing active defers to the lowest layer that still has an
//! active arm, and that round updates no statistics.

use crate::error::{BanditError, Result};

use super::layer::LayerState;
use super::width::WidthRule;
use super::{Learner, PlaySource};

/// `max(1, ceil(log2 T))`.
pub fn num_layers(horizon: u64) -> usize {
    if horizon <= 2 {
        1
    } else {
        (u64::BITS - (horizon - 1).leading_zeros()) as usize
    }
}

/// `P(l) = 2^-l` for `l >= 2`, the rest on layer 1.
pub fn layer_probabilities(num_layers: usize) -> Vec<f64> {
    assert!(num_layers >= 1);
    let mut probs: Vec<f64> = (1..=num_layers).map(|l| 0.5f64.powi(l as i32)).collect();
    let rest: f64 = probs[1..].iter().sum();
    probs[0] = 1.0 - rest;
    probs
}

/// Inverse CDF over layers `1, 2, ..., L` for one uniform draw.
pub fn layer_sample(u: f64, num_layers: usize) -> usize {
    let probs = layer_probabilities(num_layers);
    sample_from(u, &probs)
}

fn sample_from(u: f64, probs: &[f64]) -> usize {
    let mut cumulative = 0.0;
    for (i, p) in probs.iter().enumerate() {
        cumulative += p;
        if u < cumulative {
            return i + 1;
        }
    }
    probs.len()
}

#[derive(Debug, Clone)]
pub struct MultiLayer {
    layers: Vec<LayerState>,
    probs: Vec<f64>,
    width: WidthRule,
    last: PlaySource,
}

impl MultiLayer {
    pub fn new(num_arms: usize, horizon: u64, delta: f64) -> Self {
        let l = num_layers(horizon);
        Self::with_layers(num_arms, l, WidthRule::layer(num_arms, horizon, delta))
    }

    pub fn with_layers(num_arms: usize, num_layers: usize, width: WidthRule) -> Self {
        Self {
            layers: vec![LayerState::new(num_arms); num_layers],
            probs: layer_probabilities(num_layers),
            width,
            last: PlaySource::Layer(1),
        }
    }

    pub fn layers(&self) -> &[LayerState] {
        &self.layers
    }

    /// Layer `l` (1-based).
    pub fn layer(&self, l: usize) -> &LayerState {
        &self.layers[l - 1]
    }

    pub fn layer_mut(&mut self, l: usize) -> &mut LayerState {
        &mut self.layers[l - 1]
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    /// Eliminates `arm` in layer `l` and every layer below it.
    pub fn eliminate_globally(&mut self, arm: usize, l: usize) {
        for layer in &mut self.layers[..l] {
            layer.eliminate(arm);
        }
    }

    fn fallback_arm(&self) -> Option<usize> {
        self.layers.iter().find_map(LayerState::first_active)
    }

    fn play_for(&self, l: usize) -> Option<(usize, PlaySource)> {
        match self.layers[l - 1].select() {
            Some(arm) => Some((arm, PlaySource::Layer(l))),
            None => self.fallback_arm().map(|arm| (arm, PlaySource::Fallback)),
        }
    }

    /// One full round: sample, play, observe.
    pub fn step(&mut self, u: f64, observe: impl FnOnce(usize) -> f64) -> Result<usize> {
        let arm = self.choose(u)?;
        self.observe(arm, observe(arm))?;
        Ok(arm)
    }
}

impl Learner for MultiLayer {
    fn name(&self) -> &'static str {
        "multilayer"
    }

    fn num_arms(&self) -> usize {
        self.layers[0].num_arms()
    }

    /// Exact mixture of each layer's deterministic choice (fallback included).
    fn distribution_into(&self, out: &mut [f64]) {
        out.fill(0.0);
        let fallback = self.fallback_arm();
        for (layer, p) in self.layers.iter().zip(&self.probs) {
            if let Some(arm) = layer.select().or(fallback) {
                out[arm] += p;
            }
        }
    }

    fn choose(&mut self, u: f64) -> Result<usize> {
        let l = sample_from(u, &self.probs);
        let (arm, source) = self
            .play_for(l)
            .ok_or_else(|| BanditError::Invariant("no layer has an active arm".into()))?;
        self.last = source;
        Ok(arm)
    }

    fn last_source(&self) -> PlaySource {
        self.last
    }

    fn observe(&mut self, arm: usize, reward: f64) -> Result<()> {
        match self.last {
            PlaySource::Layer(l) => {
                let layer = &mut self.layers[l - 1];
                layer.record(arm, reward)?;
                let rule = self.width;
                for gone in layer.elimination_sweep(|n| rule.width(n)) {
                    self.eliminate_globally(gone, l);
                }
            }
            _ => crate::mean::check_reward(reward)?,
        }
        Ok(())
    }

    fn is_eliminated(&self, arm: usize) -> bool {
        // the top layer's set is contained in every other layer's
        self.layers[self.layers.len() - 1].is_inactive(arm)
    }

    fn num_instances(&self) -> usize {
        self.layers.len()
    }

    fn check_invariants(&self) -> Result<()> {
        for l in 1..self.layers.len() {
            let (lower, upper) = (&self.layers[l - 1], &self.layers[l]);
            for a in 0..self.num_arms() {
                if upper.is_inactive(a) && !lower.is_inactive(a) {
                    return Err(BanditError::Invariant(format!(
                        "arm {a} inactive in layer {} but active in layer {l}",
                        l + 1
                    )));
                }
            }
        }
        if self.fallback_arm().is_none() {
            return Err(BanditError::Invariant("no layer has an active arm".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layer_counts() {
        assert_eq!(num_layers(1), 1);
        assert_eq!(num_layers(2), 1);
        assert_eq!(num_layers(3), 2);
        assert_eq!(num_layers(1024), 10);
        assert_eq!(num_layers(1025), 11);
        assert_eq!(num_layers(100_000), 17);
    }

    #[test]
    fn three_layer_probabilities() {
        assert_eq!(layer_probabilities(3), vec![0.625, 0.25, 0.125]);
        assert_eq!(layer_probabilities(1), vec![1.0]);
        assert_eq!(layer_sample(0.5, 3), 1);
        assert_eq!(layer_sample(0.9, 3), 3);
        assert_eq!(layer_sample(0.625, 3), 2);
        assert_eq!(layer_sample(0.874_999, 3), 2);
        assert_eq!(layer_sample(0.875, 3), 3);
    }

    fn with_pulls(ml: &mut MultiLayer, l: usize, pulls: &[u64]) {
        for (arm, &n) in pulls.iter().enumerate() {
            for _ in 0..n {
                ml.layer_mut(l).record(arm, 0.5).unwrap();
            }
        }
    }

    #[test]
    fn distribution_from_layer_choices() {
        let mut ml = MultiLayer::with_layers(2, 3, WidthRule::Layer { log_term: 10.0 });
        // layer 1 picks arm 2 (index 1); layers 2 and 3 pick arm 1 (index 0)
        with_pulls(&mut ml, 1, &[1, 0]);
        assert_eq!(ml.distribution(), vec![0.375, 0.625]);
        let single = MultiLayer::with_layers(3, 1, WidthRule::Layer { log_term: 10.0 });
        assert_eq!(single.distribution(), vec![1.0, 0.0, 0.0]);
    }

    #[test]
    fn elimination_propagates_downward_only() {
        let mut ml = MultiLayer::with_layers(2, 4, WidthRule::Layer { log_term: 1e-6 });
        // feed layer 3 until it separates the point-mass arms
        let rewards = [1.0, 0.0];
        ml.last = PlaySource::Layer(3);
        for _ in 0..4 {
            let arm = ml.layer(3).select().unwrap();
            ml.last = PlaySource::Layer(3);
            ml.observe(arm, rewards[arm]).unwrap();
        }
        for l in 1..=3 {
            assert!(ml.layer(l).is_inactive(1), "layer {l}");
        }
        assert!(!ml.layer(4).is_inactive(1));
        ml.check_invariants().unwrap();
    }

    #[test]
    fn fallback_uses_lowest_nonempty_layer() {
        let mut ml = MultiLayer::with_layers(3, 3, WidthRule::Layer { log_term: 10.0 });
        for a in 0..3 {
            ml.layer_mut(1).eliminate(a);
        }
        ml.layer_mut(2).eliminate(0);
        ml.layer_mut(2).eliminate(1);
        let before = ml.clone();
        let arm = ml.choose(0.1).unwrap();
        assert_eq!(arm, 2);
        assert_eq!(ml.last_source(), PlaySource::Fallback);
        ml.observe(arm, 1.0).unwrap();
        assert_eq!(ml.layers(), before.layers());
    }

    #[test]
    fn fresh_state_plays_first_arm() {
        for u in [0.0, 0.3, 0.7, 0.99] {
            let mut ml = MultiLayer::new(3, 1000, 0.05);
            assert_eq!(ml.choose(u).unwrap(), 0);
        }
    }
}
