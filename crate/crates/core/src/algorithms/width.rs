//! Confidence widths. All logarithms are natural except the inner `log T` of
//! the layer width, which is base 2 to match the number of layers.

/// `ln(scale * K * T / delta)`
fn log_term(scale: f64, k: usize, horizon: u64, delta: f64) -> f64 {
    (scale * k as f64 * horizon as f64 / delta).ln()
}

/// `log2 T`, floored at 1 so a one-round horizon still gives a finite width.
pub fn inner_log2(horizon: u64) -> f64 {
    (horizon as f64).log2().max(1.0)
}

/// A width as a function of the pull count, with the log factor precomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum WidthRule {
    /// `sqrt(L / n)`
    Basic { log_term: f64 },
    /// `sqrt(L / n) + C / n`
    Enlarged { log_term: f64, corruption: f64 },
    /// `sqrt(L / n) + 2L / n`
    Slow { log_term: f64 },
    /// `sqrt(M / n) + M / n`
    Layer { log_term: f64 },
}

impl WidthRule {
    /// `L = ln(8KT / delta)`
    pub fn basic(k: usize, horizon: u64, delta: f64) -> Self {
        WidthRule::Basic {
            log_term: log_term(8.0, k, horizon, delta),
        }
    }

    /// `L = ln(2KT / delta)`
    pub fn enlarged(corruption: f64, k: usize, horizon: u64, delta: f64) -> Self {
        WidthRule::Enlarged {
            log_term: log_term(2.0, k, horizon, delta),
            corruption,
        }
    }

    /// `L = ln(8KT / delta)`
    pub fn slow(k: usize, horizon: u64, delta: f64) -> Self {
        WidthRule::Slow {
            log_term: log_term(8.0, k, horizon, delta),
        }
    }

    /// `M = ln(4KT log2(T) / delta)`
    pub fn layer(k: usize, horizon: u64, delta: f64) -> Self {
        WidthRule::Layer {
            log_term: log_term(4.0 * inner_log2(horizon), k, horizon, delta),
        }
    }

    /// Infinite before the first pull.
    pub fn width(&self, n: u64) -> f64 {
        if n == 0 {
            return f64::INFINITY;
        }
        let n = n as f64;
        match *self {
            WidthRule::Basic { log_term } => (log_term / n).sqrt(),
            WidthRule::Enlarged {
                log_term,
                corruption,
            } => (log_term / n).sqrt() + corruption / n,
            WidthRule::Slow { log_term } => (log_term / n).sqrt() + 2.0 * log_term / n,
            WidthRule::Layer { log_term } => (log_term / n).sqrt() + log_term / n,
        }
    }
}

pub fn width_basic(n: u64, k: usize, horizon: u64, delta: f64) -> f64 {
    WidthRule::basic(k, horizon, delta).width(n)
}

pub fn width_enlarged(n: u64, corruption: f64, k: usize, horizon: u64, delta: f64) -> f64 {
    WidthRule::enlarged(corruption, k, horizon, delta).width(n)
}

pub fn width_slow(n: u64, k: usize, horizon: u64, delta: f64) -> f64 {
    WidthRule::slow(k, horizon, delta).width(n)
}

pub fn width_layer(n: u64, k: usize, horizon: u64, delta: f64) -> f64 {
    WidthRule::layer(k, horizon, delta).width(n)
}

/// Pull count after which a suboptimal arm is gone with high probability:
/// `ceil((36 ln(2KT/delta) + 6C) / gap^2)`. `None` for a non-positive gap.
pub fn elimination_threshold(gap: f64, corruption: f64, k: usize, horizon: u64, delta: f64) -> Option<u64> {
    if gap.is_nan() || gap <= 0.0 {
        return None;
    }
    let l = log_term(2.0, k, horizon, delta);
    Some(((36.0 * l + 6.0 * corruption) / (gap * gap)).ceil() as u64)
}
