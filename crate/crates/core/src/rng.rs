//! Counter-keyed random streams.
//!
//! Every stream is a ChaCha8 keystream selected by `(master seed, episode)`
//! with the purpose tag as the ChaCha stream id. Draw `(round, slot)` lives at
//! a fixed keystream offset, so a value never depends on evaluation order,
//! on which other episodes run, or on how many draws another purpose used.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Purpose {
    Environment,
    Learner,
    Adversary,
}

impl Purpose {
    fn stream_id(self) -> u64 {
        match self {
            Purpose::Environment => 0,
            Purpose::Learner => 1,
            Purpose::Adversary => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeededRng {
    master_seed: u64,
    episode: u64,
    purpose: Purpose,
    slots_per_round: u64,
    inner: ChaCha8Rng,
    /// Index of the next u64 the keystream will produce.
    cursor: u64,
}

impl SeededRng {
    /// `slots_per_round` is the number of draws reserved for every round.
    pub fn new(master_seed: u64, episode: u64, purpose: Purpose, slots_per_round: u64) -> Self {
        assert!(slots_per_round > 0);
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&master_seed.to_le_bytes());
        key[8..16].copy_from_slice(&episode.to_le_bytes());
        let mut inner = ChaCha8Rng::from_seed(key);
        inner.set_stream(purpose.stream_id());
        Self {
            master_seed,
            episode,
            purpose,
            slots_per_round,
            inner,
            cursor: 0,
        }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn episode(&self) -> u64 {
        self.episode
    }

    pub fn purpose(&self) -> Purpose {
        self.purpose
    }

    /// Uniform draw in `[0, 1)` for `slot` of round `round` (rounds start at 1).
    pub fn uniform_at(&mut self, round: u64, slot: u64) -> f64 {
        debug_assert!(round >= 1 && slot < self.slots_per_round);
        let index = (round - 1) * self.slots_per_round + slot;
        if index != self.cursor {
            // two 32-bit words per u64
            self.inner.set_word_pos(u128::from(index) * 2);
            self.cursor = index;
        }
        self.next_uniform()
    }

    /// Continues the keystream from the last position.
    pub fn next_uniform(&mut self) -> f64 {
        self.cursor += 1;
        to_unit(self.inner.next_u64())
    }
}

/// Top 53 bits as a float in `[0, 1)`.
fn to_unit(bits: u64) -> f64 {
    (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
