//! Per-round stochastic reward draws.

use crate::instance::BanditInstance;
use crate::rng::{Purpose, SeededRng};

/// Environment randomness for one episode: one keyed slot per arm per round.
#[derive(Debug, Clone)]
pub struct Environment {
    instance: BanditInstance,
    rng: SeededRng,
}

impl Environment {
    pub fn new(instance: BanditInstance, master_seed: u64, episode: u64) -> Self {
        let k = instance.num_arms() as u64;
        Self {
            instance,
            rng: SeededRng::new(master_seed, episode, Purpose::Environment, k),
        }
    }

    pub fn instance(&self) -> &BanditInstance {
        &self.instance
    }

    /// Writes `r_S^t(a)` for every arm into `out`.
    pub fn draw_round_into(&mut self, t: u64, out: &mut [f64]) {
        draw_round_into(&self.instance, &mut self.rng, t, out);
    }
}

/// Draws one independent reward per arm for round `t`. All K arms are sampled
/// regardless of which one will be played.
pub fn draw_round(instance: &BanditInstance, rng: &mut SeededRng, t: u64) -> Vec<f64> {
    let mut out = vec![0.0; instance.num_arms()];
    draw_round_into(instance, rng, t, &mut out);
    out
}

pub fn draw_round_into(instance: &BanditInstance, rng: &mut SeededRng, t: u64, out: &mut [f64]) {
    for (slot, (arm, dst)) in instance.arms().iter().zip(out.iter_mut()).enumerate() {
        *dst = arm.sample_with(rng.uniform_at(t, slot as u64));
    }
}
