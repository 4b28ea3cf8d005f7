//! Corruption strategies.
//!
//! An adversary sees the current round's stochastic rewards, the history of
//! earlier rounds and the learner's distribution `w^t`, but never the arm the
//! learner is about to draw: the harness builds [`AdversaryContext`] before the
//! arm draw happens. Every adversary carries a budget and must keep
//! the ledger total within it on every path; the harness rejects a round that
//! would overspend.

use serde::{Deserialize, Serialize};

use crate::error::{BanditError, Result};
use crate::instance::{ArmDistribution, BanditInstance};
use crate::ledger::{Budget, CorruptionLedger};
use crate::regret::RoundRecord;
use crate::rng::{Purpose, SeededRng};

/// What the adversary may look at in round `t`.
#[derive(Debug, Clone, Copy)]
pub struct AdversaryContext<'a> {
    pub round: u64,
    pub stochastic_rewards: &'a [f64],
    /// Rounds `1..t`. Empty unless the adversary asks for it via
    /// [`Adversary::needs_history`] or the harness keeps full traces.
    pub history: &'a [RoundRecord],
    pub learner_distribution: &'a [f64],
    pub ledger: &'a CorruptionLedger,
}

pub trait Adversary: Send {
    fn name(&self) -> &'static str;

    fn budget(&self) -> Budget;

    fn needs_history(&self) -> bool {
        false
    }

    /// Writes the corrupted rewards into `out`, which holds a copy of the
    /// stochastic rewards on entry.
    fn corrupt(&mut self, ctx: &AdversaryContext<'_>, out: &mut [f64]);
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum AdversarySpec {
    Null,
    /// Re-randomizes arm 0 to Bernoulli(1/2 - gap) for the first `budget` rounds.
    PrefixFlip { budget: f64, gap: f64 },
    /// Copies arm 1's reward onto arm 0 for the first `budget` rounds.
    IdenticalArms { budget: f64 },
    /// Zeroes the optimal arm whenever the learner puts at least `threshold`
    /// mass on it, until the budget runs out.
    TargetedOptimal { budget: f64, threshold: f64 },
}

impl AdversarySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            AdversarySpec::Null => "null",
            AdversarySpec::PrefixFlip { .. } => "prefix_flip",
            AdversarySpec::IdenticalArms { .. } => "identical_arms",
            AdversarySpec::TargetedOptimal { .. } => "targeted_optimal",
        }
    }

    pub fn budget(&self) -> Budget {
        match *self {
            AdversarySpec::Null => Budget::Bounded(0.0),
            AdversarySpec::PrefixFlip { budget, .. }
            | AdversarySpec::IdenticalArms { budget }
            | AdversarySpec::TargetedOptimal { budget, .. } => Budget::Bounded(budget),
        }
    }

    /// Checks the parameters against the instance the adversary will attack.
    pub fn validate(&self, instance: &BanditInstance) -> Result<()> {
        let budget_ok = |field: &str, budget: f64, min: f64| {
            if budget.is_finite() && budget >= min {
                Ok(())
            } else {
                Err(BanditError::config(field, format!("budget must be finite and >= {min}, got {budget}")))
            }
        };
        match *self {
            AdversarySpec::Null => Ok(()),
            AdversarySpec::PrefixFlip { budget, gap } => {
                budget_ok("adversary.budget", budget, 1.0)?;
                if !(gap > 0.0 && gap <= 0.5) {
                    return Err(BanditError::config("adversary.gap", format!("gap must be in (0, 1/2], got {gap}")));
                }
                let expected = [0.5 + gap, 0.5];
                let matches = instance.num_arms() == 2
                    && instance.arms().iter().zip(expected).all(|(arm, m)| {
                        matches!(arm, ArmDistribution::Bernoulli(p) if (p - m).abs() <= 1e-9)
                    });
                if !matches {
                    return Err(BanditError::config(
                        "adversary.kind",
                        format!("prefix_flip needs the 2-arm Bernoulli instance ({}, 0.5)", 0.5 + gap),
                    ));
                }
                Ok(())
            }
            AdversarySpec::IdenticalArms { budget } => {
                budget_ok("adversary.budget", budget, 0.0)?;
                if instance.num_arms() != 2 {
                    return Err(BanditError::config("adversary.kind", "identical_arms needs exactly 2 arms"));
                }
                Ok(())
            }
            AdversarySpec::TargetedOptimal { budget, threshold } => {
                budget_ok("adversary.budget", budget, 0.0)?;
                if !(0.0..=1.0).contains(&threshold) {
                    return Err(BanditError::config("adversary.threshold", format!("threshold must be in [0, 1], got {threshold}")));
                }
                Ok(())
            }
        }
    }

    pub fn build(
        &self,
        instance: &BanditInstance,
        master_seed: u64,
        episode: u64,
    ) -> Result<Box<dyn Adversary>> {
        self.validate(instance)?;
        Ok(match *self {
            AdversarySpec::Null => Box::new(NullAdversary),
            AdversarySpec::PrefixFlip { budget, gap } => Box::new(PrefixFlip {
                budget,
                replacement: ArmDistribution::Bernoulli(0.5 - gap),
                rng: SeededRng::new(master_seed, episode, Purpose::Adversary, 1),
            }),
            AdversarySpec::IdenticalArms { budget } => Box::new(IdenticalArms { budget }),
            AdversarySpec::TargetedOptimal { budget, threshold } => Box::new(TargetedOptimal {
                budget,
                threshold,
                optimal: instance.optimal_arm(),
            }),
        })
    }
}

/// Leaves rewards untouched.
#[derive(Debug, Clone, Copy, Default)]
pub struct NullAdversary;

impl Adversary for NullAdversary {
    fn name(&self) -> &'static str {
        "null"
    }

    fn budget(&self) -> Budget {
        Budget::Bounded(0.0)
    }

    fn corrupt(&mut self, _ctx: &AdversaryContext<'_>, _out: &mut [f64]) {}
}

#[derive(Debug, Clone)]
pub struct PrefixFlip {
    budget: f64,
    replacement: ArmDistribution,
    rng: SeededRng,
}

/// Round `t` of the prefix attack given the replacement draw for arm 0.
pub fn prefix_flip_round(t: u64, budget: f64, replacement: f64, out: &mut [f64]) {
    if (t as f64) <= budget {
        out[0] = replacement;
    }
}

impl Adversary for PrefixFlip {
    fn name(&self) -> &'static str {
        "prefix_flip"
    }

    fn budget(&self) -> Budget {
        Budget::Bounded(self.budget)
    }

    fn corrupt(&mut self, ctx: &AdversaryContext<'_>, out: &mut [f64]) {
        if (ctx.round as f64) <= self.budget {
            let draw = self.replacement.sample_with(self.rng.uniform_at(ctx.round, 0));
            prefix_flip_round(ctx.round, self.budget, draw, out);
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IdenticalArms {
    budget: f64,
}

pub fn identical_arms_round(t: u64, budget: f64, out: &mut [f64]) {
    if (t as f64) <= budget {
        out[0] = out[1];
    }
}

impl Adversary for IdenticalArms {
    fn name(&self) -> &'static str {
        "identical_arms"
    }

    fn budget(&self) -> Budget {
        Budget::Bounded(self.budget)
    }

    fn corrupt(&mut self, ctx: &AdversaryContext<'_>, out: &mut [f64]) {
        identical_arms_round(ctx.round, self.budget, out);
    }
}

#[derive(Debug, Clone, Copy)]
pub struct TargetedOptimal {
    budget: f64,
    threshold: f64,
    optimal: usize,
}

/// Pushes the optimal arm's reward toward zero, clipped so the ledger can pay.
pub fn targeted_round(
    optimal: usize,
    threshold: f64,
    distribution: &[f64],
    ledger: &CorruptionLedger,
    out: &mut [f64],
) {
    let realized = out[optimal];
    let remaining = ledger.remaining();
    if distribution[optimal] < threshold || remaining <= 0.0 || realized == 0.0 {
        return;
    }
    let mut corrupted = (realized - remaining.min(realized)).max(0.0);
    // float rounding of `realized - corrupted` may land one ulp above the
    // remaining budget; step back toward the realization until payable
    while !ledger.affordable(realized - corrupted) {
        corrupted = next_up(corrupted);
    }
    out[optimal] = corrupted;
}

fn next_up(x: f64) -> f64 {
    if x == 0.0 {
        f64::from_bits(1)
    } else {
        f64::from_bits(x.to_bits() + 1)
    }
}

impl Adversary for TargetedOptimal {
    fn name(&self) -> &'static str {
        "targeted_optimal"
    }

    fn budget(&self) -> Budget {
        Budget::Bounded(self.budget)
    }

    fn corrupt(&mut self, ctx: &AdversaryContext<'_>, out: &mut [f64]) {
        targeted_round(self.optimal, self.threshold, ctx.learner_distribution, ctx.ledger, out);
    }
}
