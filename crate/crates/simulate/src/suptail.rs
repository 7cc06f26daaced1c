//! Tail of the local oscillation sup_{|t−s|≤h} |Z_t − Z_s| over [0, 1].

use crate::path::sample_paths;
use crate::SimulateError;
use rand::Rng;
use rosenlab_core::{fit::linear_fit, Hurst};
use serde::Serialize;

const N_STEPS: usize = 4096;
const INTERNAL_FACTOR: usize = 8;
const MIN_TAIL_EVENTS: usize = 50;

/// Monte Carlo tail of the oscillation at scale h, with the log-linear
/// fit against u / h^H that an exponential tail should produce.
#[derive(Debug, Clone, Serialize)]
pub struct SupTailReport {
    pub h: f64,
    pub u_grid: Vec<f64>,
    pub probabilities: Vec<f64>,
    /// Exceedance counts behind each probability.
    pub events: Vec<usize>,
    /// Fitted d log P / d (u / h^H); negative for an exponential tail.
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Estimates P(sup_{|t−s|≤h} |Z_t − Z_s| ≥ u) over paths on [0, 1] for
/// each u in the grid and fits log P against u / h^H.
pub fn verify_sup_tail(
    hurst: Hurst,
    h: f64,
    u_grid: &[f64],
    n_paths: usize,
    rng: &mut impl Rng,
) -> Result<SupTailReport, SimulateError> {
    let dt = 1.0 / N_STEPS as f64;
    if !(h > 0.0 && h <= 1.0) || !h.is_finite() {
        return Err(SimulateError::InvalidParam {
            name: "h",
            value: h,
            expected: "a scale in (0, 1]",
        });
    }
    if h < 10.0 * dt {
        return Err(SimulateError::InvalidParam {
            name: "h",
            value: h,
            expected: "at least ten grid steps",
        });
    }
    if u_grid.is_empty() {
        return Err(SimulateError::InvalidParam {
            name: "u_grid",
            value: 0.0,
            expected: "a nonempty ascending grid",
        });
    }
    for w in u_grid.windows(2) {
        if !(w[1] > w[0]) {
            return Err(SimulateError::InvalidParam {
                name: "u_grid",
                value: w[1],
                expected: "strictly ascending finite levels",
            });
        }
    }
    if !(u_grid[0] >= 0.0) || !u_grid.iter().all(|u| u.is_finite()) {
        return Err(SimulateError::InvalidParam {
            name: "u_grid",
            value: u_grid[0],
            expected: "nonnegative finite levels",
        });
    }
    if n_paths == 0 {
        return Err(SimulateError::InvalidParam {
            name: "n_paths",
            value: 0.0,
            expected: "a positive path count",
        });
    }

    let window = (h * N_STEPS as f64).round() as usize;
    let seed = rng.next_u64();
    let paths = sample_paths(hurst, N_STEPS, 1.0, seed, INTERNAL_FACTOR, n_paths)?;
    let sups: Vec<f64> = paths
        .iter()
        .map(|p| window_oscillation(p.values(), window))
        .collect();

    let events: Vec<usize> = u_grid
        .iter()
        .map(|&u| sups.iter().filter(|&&s| s >= u).count())
        .collect();
    let last = *events.last().unwrap();
    if last < MIN_TAIL_EVENTS {
        return Err(SimulateError::InsufficientTailEvents {
            threshold_u: *u_grid.last().unwrap(),
            events: last,
        });
    }
    let probabilities: Vec<f64> = events
        .iter()
        .map(|&e| e as f64 / n_paths as f64)
        .collect();

    // The exponential-tail shape is a statement about u > 0; the trivial
    // u = 0 entry (probability one) stays out of the fit.
    let scale = h.powf(hurst.get());
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&u, &p) in u_grid.iter().zip(&probabilities) {
        if u > 0.0 {
            xs.push(u / scale);
            ys.push(p.ln());
        }
    }
    if xs.len() < 3 {
        return Err(SimulateError::InvalidParam {
            name: "u_grid",
            value: xs.len() as f64,
            expected: "at least three positive levels for the tail fit",
        });
    }
    let fit = linear_fit(&xs, &ys);
    Ok(SupTailReport {
        h,
        u_grid: u_grid.to_vec(),
        probabilities,
        events,
        slope: fit.slope,
        intercept: fit.intercept,
        r_squared: fit.r_squared,
    })
}

/// Largest |Z_t − Z_s| over grid pairs at most `window` steps apart, by
/// monotonic-deque sliding extrema in O(n).
fn window_oscillation(values: &[f64], window: usize) -> f64 {
    use std::collections::VecDeque;
    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let mut best = 0.0f64;
    for i in 0..values.len() {
        while maxq.front().is_some_and(|&f| f + window < i) {
            maxq.pop_front();
        }
        while minq.front().is_some_and(|&f| f + window < i) {
            minq.pop_front();
        }
        while maxq.back().is_some_and(|&b| values[b] <= values[i]) {
            maxq.pop_back();
        }
        while minq.back().is_some_and(|&b| values[b] >= values[i]) {
            minq.pop_back();
        }
        maxq.push_back(i);
        minq.push_back(i);
        best = best.max(values[maxq[0]] - values[minq[0]]);
    }
    best
}
