use serde::{Deserialize, Serialize};

/// Linear interpolation between order statistics (`q` in `[0, 1]`).
/// `values` must be sorted ascending and nonempty.
pub fn percentile_sorted(values: &[f64], q: f64) -> f64 {
    assert!(!values.is_empty());
    let h = (values.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    if lo == hi {
        values[lo]
    } else {
        values[lo] + (h - lo as f64) * (values[hi] - values[lo])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub mean: f64,
    pub median: f64,
    pub p5: f64,
    pub p95: f64,
}

impl MetricSummary {
    /// `None` for an empty sample.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        Some(Self {
            mean: values.iter().sum::<f64>() / values.len() as f64,
            median: percentile_sorted(&sorted, 0.5),
            p5: percentile_sorted(&sorted, 0.05),
            p95: percentile_sorted(&sorted, 0.95),
        })
    }
}

/// Event frequency with a normal-approximation 95% half-width.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FailureRate {
    pub events: u64,
    pub trials: u64,
    pub rate: f64,
    pub half_width: f64,
}

impl FailureRate {
    /// Whether `rate <= bound + half_width`.
    pub fn within(&self, bound: f64) -> bool {
        self.rate <= bound + self.half_width
    }
}

/// `(events / n, 1.96 * sqrt(rate (1 - rate) / n))`.
pub fn empirical_failure_rate(events: &[bool]) -> FailureRate {
    assert!(!events.is_empty(), "need at least one trial");
    let trials = events.len() as u64;
    let count = events.iter().filter(|&&e| e).count() as u64;
    let rate = count as f64 / trials as f64;
    FailureRate {
        events: count,
        trials,
        rate,
        half_width: 1.96 * (rate * (1.0 - rate) / trials as f64).sqrt(),
    }
}
