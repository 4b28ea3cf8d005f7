//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use robust_bandits::algorithms::Learner;
use robust_bandits::rng::{Purpose, SeededRng};

/// Every final inactive set reachable by removing dominated arms one at a
/// time, in any order.
pub fn sweep_all_orders(means: &[f64], widths: &[f64], inactive: &[bool]) -> BTreeSet<Vec<bool>> {
    fn go(means: &[f64], widths: &[f64], state: Vec<bool>, seen: &mut HashSet<Vec<bool>>, out: &mut BTreeSet<Vec<bool>>) {
        if !seen.insert(state.clone()) {
            return;
        }
        let k = means.len();
        let dominated: Vec<usize> = (0..k)
            .filter(|&l| !state[l])
            .filter(|&l| (0..k).any(|w| !state[w] && means[w] - means[l] > widths[w] + widths[l]))
            .collect();
        if dominated.is_empty() {
            out.insert(state);
            return;
        }
        for l in dominated {
            let mut next = state.clone();
            next[l] = true;
            go(means, widths, next, seen, out);
        }
    }
    let mut out = BTreeSet::new();
    go(means, widths, inactive.to_vec(), &mut HashSet::new(), &mut out);
    out
}

/// Largest deviation between the learner's exact distribution and the
/// empirical frequency of `draws` calls to `choose` on a clone.
pub fn distribution_vs_monte_carlo<L: Learner + Clone>(learner: &L, draws: u64, seed: u64) -> f64 {
    let exact = learner.distribution();
    let mut probe = learner.clone();
    let mut rng = SeededRng::new(seed, 0, Purpose::Learner, 1);
    let mut counts = vec![0u64; exact.len()];
    for _ in 0..draws {
        counts[probe.choose(rng.next_uniform()).expect("learner has a playable arm")] += 1;
    }
    exact
        .iter()
        .zip(&counts)
        .map(|(p, &c)| (p - c as f64 / draws as f64).abs())
        .fold(0.0, f64::max)
}

/// Plain UCB1 written from scratch with its own random source: pull each
/// arm once, then maximise `mean + sqrt(2 ln t / n)` with `t` the number of
/// completed rounds. Returns realized regret against the best arm's total.
pub fn ucb_reference_regret(means: &[f64], horizon: u64, seed: u64) -> f64 {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let k = means.len();
    let mut n = vec![0u64; k];
    let mut sums = vec![0.0f64; k];
    let mut arm_totals = vec![0.0f64; k];
    let mut obtained = 0.0;
    for t in 0..horizon {
        let rewards: Vec<f64> = means.iter().map(|&p| if rng.random::<f64>() < p { 1.0 } else { 0.0 }).collect();
        let arm = match n.iter().position(|&c| c == 0) {
            Some(a) => a,
            None => {
                let mut best = 0;
                let mut best_index = f64::NEG_INFINITY;
                for a in 0..k {
                    let idx = sums[a] / n[a] as f64 + (2.0 * (t as f64).ln() / n[a] as f64).sqrt();
                    if idx > best_index {
                        best_index = idx;
                        best = a;
                    }
                }
                best
            }
        };
        n[arm] += 1;
        sums[arm] += rewards[arm];
        obtained += rewards[arm];
        for a in 0..k {
            arm_totals[a] += rewards[a];
        }
    }
    arm_totals.iter().cloned().fold(f64::NEG_INFINITY, f64::max) - obtained
}

pub fn mean_and_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
