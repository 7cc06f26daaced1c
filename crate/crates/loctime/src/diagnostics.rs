//! Per-path regularity diagnostics built on shrinking windows.

use rosenlab_core::PathSample;
use serde::Serialize;

use crate::estimate::local_time_histogram;
use crate::LoctimeError;

/// Number of spatial bins resolving the window footprint r^H.
const LIMSUP_BINS: f64 = 50.0;
/// Smallest usable window, in sampling steps.
const LIMSUP_MIN_STEPS: f64 = 20.0;
const OSC_MIN_STEPS: f64 = 2.0;

/// Scaled local-time sups over shrinking symmetric windows.
#[derive(Debug, Clone, Serialize)]
pub struct LimsupReport {
    pub s: f64,
    pub kappa: f64,
    /// Window half-widths, largest first.
    pub r_grid: Vec<f64>,
    /// sup_x L(x, [s-r, s+r]) / (r^{1-H} (ln ln 1/r)^kappa) per window.
    pub ratios: Vec<f64>,
    /// Running maximum of the ratios as the windows shrink.
    pub running_max: Vec<f64>,
}

impl LimsupReport {
    /// True when the ratios rise strictly through every window in the
    /// last decade of r, the signature of an unbounded scaled sup.
    pub fn monotone_growth_in_last_decade(&self) -> bool {
        let r_min = *self.r_grid.last().expect("nonempty grid");
        let tail: Vec<f64> = self
            .r_grid
            .iter()
            .zip(&self.ratios)
            .filter(|(&r, _)| r <= 10.0 * r_min)
            .map(|(_, &q)| q)
            .collect();
        tail.len() >= 3 && tail.windows(2).all(|w| w[1] > w[0])
    }
}

/// Minimum oscillation ratios over shrinking windows.
#[derive(Debug, Clone, Serialize)]
pub struct IrregularityReport {
    /// Window half-widths, largest first.
    pub r_grid: Vec<f64>,
    /// min over s of sup_{|t-s|<r} |Z_t - Z_s| / r^H, per window.
    pub min_ratios: Vec<f64>,
    /// Smallest ratio across all windows.
    pub floor: f64,
}

fn checked_descending(name: &'static str, grid: &[f64]) -> Result<(), LoctimeError> {
    if grid.len() < 3 {
        return Err(LoctimeError::InvalidParam {
            name,
            value: grid.len() as f64,
            expected: "at least three window sizes",
        });
    }
    for pair in grid.windows(2) {
        if !(pair[0].is_finite() && pair[1] > 0.0 && pair[1] < pair[0]) {
            return Err(LoctimeError::InvalidParam {
                name,
                value: pair[1],
                expected: "a strictly descending grid of positive window sizes",
            });
        }
    }
    Ok(())
}

/// Tracks sup_x L(x, [s-r, s+r]) against the law-of-iterated-logarithm
/// normalization r^{1-H} (ln ln 1/r)^kappa on shrinking windows.
///
/// `kappa` defaults to 2H. The spatial resolution follows the window:
/// bins of width r^H / 50. A bounded ratio trajectory (in particular no
/// monotone growth over the last decade of r) is consistent with the
/// normalization; steadily rising ratios indicate a too-weak exponent.
pub fn limsup_diagnostic(
    path: &PathSample,
    s: f64,
    r_grid: &[f64],
    kappa: Option<f64>,
) -> Result<LimsupReport, LoctimeError> {
    let h = path.hurst().get();
    let kappa = kappa.unwrap_or(2.0 * h);
    if !kappa.is_finite() || kappa < 0.0 {
        return Err(LoctimeError::InvalidParam {
            name: "kappa",
            value: kappa,
            expected: "a nonnegative finite exponent",
        });
    }
    checked_descending("r_grid", r_grid)?;
    let r_max = r_grid[0];
    if r_max >= (-1.0f64).exp() {
        return Err(LoctimeError::InvalidParam {
            name: "r_grid",
            value: r_max,
            expected: "windows smaller than exp(-1) so the iterated logarithm is positive",
        });
    }
    if !(s.is_finite() && s - r_max >= 0.0 && s + r_max <= path.horizon() * (1.0 + 1e-9)) {
        return Err(LoctimeError::InvalidParam {
            name: "s",
            value: s,
            expected: "a center time with the largest window inside the horizon",
        });
    }
    let dt = path.dt();
    let r_min = *r_grid.last().expect("nonempty grid");
    if r_min < LIMSUP_MIN_STEPS * dt {
        return Err(LoctimeError::Resolution {
            scale: r_min,
            min_scale: LIMSUP_MIN_STEPS * dt,
        });
    }

    let mut ratios = Vec::with_capacity(r_grid.len());
    let mut running_max = Vec::with_capacity(r_grid.len());
    let mut peak = f64::MIN;
    for &r in r_grid {
        let bin_width = r.powf(h) / LIMSUP_BINS;
        let estimate = local_time_histogram(path, s - r, s + r, bin_width)?;
        let sup = estimate
            .density()
            .iter()
            .cloned()
            .fold(0.0f64, f64::max);
        let normalization = r.powf(1.0 - h) * (1.0 / r).ln().ln().powf(kappa);
        let ratio = sup / normalization;
        peak = peak.max(ratio);
        ratios.push(ratio);
        running_max.push(peak);
    }
    Ok(LimsupReport {
        s,
        kappa,
        r_grid: r_grid.to_vec(),
        ratios,
        running_max,
    })
}

/// Tracks the pointwise oscillation sup_{|t-s|<r} |Z_t - Z_s| against
/// the self-similar scale r^H and reports the worst (smallest) ratio
/// over the center grid for each window size.
///
/// Paths with genuine H-scale roughness keep the ratios bounded away
/// from zero as r shrinks; smooth controls (for example a linear ramp)
/// decay like r^{1-H} and fall through any fixed floor.
pub fn irregularity_diagnostic(
    path: &PathSample,
    s_grid: &[f64],
    r_grid: &[f64],
) -> Result<IrregularityReport, LoctimeError> {
    if s_grid.is_empty() {
        return Err(LoctimeError::InvalidParam {
            name: "s_grid",
            value: 0.0,
            expected: "at least one center time",
        });
    }
    checked_descending("r_grid", r_grid)?;
    let r_max = r_grid[0];
    let horizon = path.horizon();
    for &s in s_grid {
        if !(s.is_finite() && s - r_max >= 0.0 && s + r_max <= horizon * (1.0 + 1e-9)) {
            return Err(LoctimeError::InvalidParam {
                name: "s_grid",
                value: s,
                expected: "center times with the largest window inside the horizon",
            });
        }
    }
    let dt = path.dt();
    let r_min = *r_grid.last().expect("nonempty grid");
    if r_min < OSC_MIN_STEPS * dt {
        return Err(LoctimeError::Resolution {
            scale: r_min,
            min_scale: OSC_MIN_STEPS * dt,
        });
    }

    let h = path.hurst().get();
    let values = path.values();
    let n_steps = path.n_steps();
    let mut min_ratios = Vec::with_capacity(r_grid.len());
    for &r in r_grid {
        let scale = r.powf(h);
        let mut worst = f64::MAX;
        for &s in s_grid {
            let center = values[(s / dt).round() as usize];
            let lo = ((s - r) / dt).ceil().max(0.0) as usize;
            let hi = (((s + r) / dt).floor() as usize).min(n_steps);
            let osc = values[lo..=hi]
                .iter()
                .map(|v| (v - center).abs())
                .fold(0.0f64, f64::max);
            worst = worst.min(osc / scale);
        }
        min_ratios.push(worst);
    }
    let floor = min_ratios.iter().cloned().fold(f64::MAX, f64::min);
    Ok(IrregularityReport {
        r_grid: r_grid.to_vec(),
        min_ratios,
        floor,
    })
}
