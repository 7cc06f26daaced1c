//! Decay-exponent fits and the ratio checks built on the raw spectra.

use serde::Serialize;

use rosenlab_core::fit::log_log_fit;
use rosenlab_core::{Hurst, Spectrum, StepProfile};

use crate::timedomain::eig_time_domain;
use crate::unitref::unit_reference_for;
use crate::SpectrumError;

/// Node budget for the time-domain solves behind the ratio checks.
const RATIO_CHECK_NODES: usize = 600;

/// Least-squares exponent of `mu_k ~ c k^slope` over `k in [k_min, k_max]`.
///
/// Returns `(slope, stderr)`.
pub fn fit_decay_exponent(
    spec: &Spectrum,
    k_min: usize,
    k_max: usize,
) -> Result<(f64, f64), SpectrumError> {
    if k_min < 2 {
        return Err(SpectrumError::InvalidParam {
            name: "k_min",
            value: k_min as f64,
            expected: "at least 2",
        });
    }
    if k_max <= k_min {
        return Err(SpectrumError::InvalidParam {
            name: "k_max",
            value: k_max as f64,
            expected: "greater than k_min",
        });
    }
    let sv = spec.singular_values();
    let upper = k_max.min(sv.len());
    let mut ks = Vec::new();
    let mut values = Vec::new();
    for k in k_min..=upper {
        let v = sv[k - 1];
        if v > 0.0 {
            ks.push(k as f64);
            values.push(v);
        }
    }
    if ks.len() < 10 {
        return Err(SpectrumError::InsufficientSpectrum {
            available: ks.len(),
            needed: 10,
        });
    }
    let fit = log_log_fit(&ks, &values);
    Ok((fit.slope, fit.slope_stderr))
}

/// Outcome of the singular-value lower-bound check.
#[derive(Debug, Clone, Serialize)]
pub struct LowerBoundReport {
    /// `r_n` for `n = 1..=n_max`.
    pub ratios: Vec<f64>,
    pub min_ratio: f64,
    /// The profile-dependent scale in the denominator.
    pub denominator_scale: f64,
}

/// Ratio of each singular value to its conjectured lower envelope:
/// `r_n = mu_n / (max_j |xi_j - xi_{j-1}| (t_j - t_{j-1})^H * ref_n^2)`,
/// with the reference spectrum taken on the unit interval.
pub fn verify_lower_bound(
    profile: &StepProfile,
    hurst: Hurst,
    n_max: usize,
) -> Result<LowerBoundReport, SpectrumError> {
    if profile.t_max() > 1.0 {
        return Err(SpectrumError::InvalidParam {
            name: "t_max",
            value: profile.t_max(),
            expected: "profile times within (0, 1]",
        });
    }
    if n_max == 0 {
        return Err(SpectrumError::InvalidParam {
            name: "n_max",
            value: 0.0,
            expected: "a positive count",
        });
    }

    let spectrum = eig_time_domain(profile, hurst.alpha(), RATIO_CHECK_NODES)?;
    let sv = spectrum.singular_values();
    if sv.len() < n_max {
        return Err(SpectrumError::InsufficientSpectrum {
            available: sv.len(),
            needed: n_max,
        });
    }
    let reference = unit_reference_for(hurst)?;
    if reference.len() < n_max {
        return Err(SpectrumError::InsufficientSpectrum {
            available: reference.len(),
            needed: n_max,
        });
    }

    let h = hurst.get();
    let mut scale = 0.0f64;
    let mut prev_t = 0.0;
    let mut prev_xi = 0.0;
    for (&t, &xi) in profile.times().iter().zip(profile.coefficients()) {
        scale = scale.max((xi - prev_xi).abs() * (t - prev_t).powf(h));
        prev_t = t;
        prev_xi = xi;
    }

    let ratios: Vec<f64> = (0..n_max)
        .map(|n| sv[n] / (scale * reference[n] * reference[n]))
        .collect();
    let min_ratio = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(LowerBoundReport {
        ratios,
        min_ratio,
        denominator_scale: scale,
    })
}

/// Per-interval rows of the localization check.
#[derive(Debug, Clone, Serialize)]
pub struct LocalizationRow {
    pub interval_index: usize,
    pub t_left: f64,
    pub t_right: f64,
    pub level: f64,
    /// `mu_k(localized) / mu_k(full)` for `k = 1..=k_max`.
    pub ratios: Vec<f64>,
}

/// Outcome of the localization check.
#[derive(Debug, Clone, Serialize)]
pub struct LocalizationReport {
    pub rows: Vec<LocalizationRow>,
    pub max_ratio: f64,
}

/// Compares the spectrum of the operator restricted to each single level
/// interval against the full-profile spectrum. Bounded ratios mean no
/// interval's contribution is lost to cancellation in the full operator.
pub fn verify_localization(
    profile: &StepProfile,
    hurst: Hurst,
    k_max: usize,
) -> Result<LocalizationReport, SpectrumError> {
    if k_max == 0 {
        return Err(SpectrumError::InvalidParam {
            name: "k_max",
            value: 0.0,
            expected: "a positive count",
        });
    }
    let alpha = hurst.alpha();
    let full = eig_time_domain(profile, alpha, RATIO_CHECK_NODES)?;
    let sv_full = full.singular_values();
    if sv_full.len() < k_max {
        return Err(SpectrumError::InsufficientSpectrum {
            available: sv_full.len(),
            needed: k_max,
        });
    }

    let breakpoints = profile.breakpoints();
    let levels = profile.levels();
    let mut rows = Vec::with_capacity(levels.len());
    let mut max_ratio = 0.0f64;
    for (j, window) in breakpoints.windows(2).enumerate() {
        let (left, right) = (window[0], window[1]);
        let level = levels[j];
        let ratios = if level == 0.0 {
            vec![0.0; k_max]
        } else {
            let localized = if j == 0 {
                StepProfile::from_levels(vec![right], vec![level])?
            } else {
                StepProfile::from_levels(vec![left, right], vec![0.0, level])?
            };
            // Enough nodes that the active interval alone resolves k_max
            // values comfortably.
            let needed = (3.0 * k_max as f64 * right / (right - left)).ceil() as usize;
            let nodes = RATIO_CHECK_NODES.max(needed);
            let loc = eig_time_domain(&localized, alpha, nodes)?;
            let sv_loc = loc.singular_values();
            if sv_loc.len() < k_max {
                return Err(SpectrumError::InsufficientSpectrum {
                    available: sv_loc.len(),
                    needed: k_max,
                });
            }
            (0..k_max).map(|k| sv_loc[k] / sv_full[k]).collect()
        };
        for &r in &ratios {
            max_ratio = max_ratio.max(r);
        }
        rows.push(LocalizationRow {
            interval_index: j,
            t_left: left,
            t_right: right,
            level,
            ratios,
        });
    }
    Ok(LocalizationReport { rows, max_ratio })
}
