use crate::error::Result;
use crate::mean::check_reward;

use super::{Learner, PlaySource};

/// Loss-based EXP3 with learning rate `sqrt(ln K / (T K))`. Baseline only.
#[derive(Debug, Clone)]
pub struct Exp3 {
    eta: f64,
    estimated_loss: Vec<f64>,
    probs: Vec<f64>,
}

impl Exp3 {
    pub fn new(num_arms: usize, horizon: u64) -> Self {
        let k = num_arms as f64;
        Self {
            eta: (k.ln() / (horizon as f64 * k)).sqrt(),
            estimated_loss: vec![0.0; num_arms],
            probs: vec![1.0 / k; num_arms],
        }
    }

    pub fn learning_rate(&self) -> f64 {
        self.eta
    }

    fn refresh(&mut self) {
        let min = self.estimated_loss.iter().copied().fold(f64::INFINITY, f64::min);
        let mut total = 0.0;
        for (p, l) in self.probs.iter_mut().zip(&self.estimated_loss) {
            *p = (-self.eta * (l - min)).exp();
            total += *p;
        }
        for p in &mut self.probs {
            *p /= total;
        }
    }
}

impl Learner for Exp3 {
    fn name(&self) -> &'static str {
        "exp3"
    }

    fn num_arms(&self) -> usize {
        self.probs.len()
    }

    fn distribution_into(&self, out: &mut [f64]) {
        out.copy_from_slice(&self.probs);
    }

    fn choose(&mut self, u: f64) -> Result<usize> {
        let mut cumulative = 0.0;
        for (a, p) in self.probs.iter().enumerate() {
            cumulative += p;
            if u < cumulative {
                return Ok(a);
            }
        }
        Ok(self.probs.len() - 1)
    }

    fn last_source(&self) -> PlaySource {
        PlaySource::Single
    }

    fn observe(&mut self, arm: usize, reward: f64) -> Result<()> {
        check_reward(reward)?;
        self.estimated_loss[arm] += (1.0 - reward) / self.probs[arm];
        self.refresh();
        Ok(())
    }
}
