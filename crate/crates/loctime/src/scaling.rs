//! Monte Carlo checks of local-time scaling laws.
//!
//! The small-window check tracks the occupation of a fixed level inside
//! windows [s, s+h] and fits the moment growth against the window size;
//! the spatial check compares occupation densities at nearby levels
//! over the unit interval and fits their mean difference against the
//! level separation.

use rand::Rng;
use rosenlab_core::fit::log_log_fit;
use rosenlab_core::Hurst;
use rosenlab_simulate::sample_paths;
use serde::Serialize;

use crate::LoctimeError;

const N_STEPS: usize = 1 << 14;
const INTERNAL_FACTOR: usize = 8;
const WINDOW_START: f64 = 0.5;
/// Level band width relative to the window's spatial scale h^H.
const BAND_FACTOR: f64 = 0.1;
const MIN_OCCUPATION: f64 = 0.10;

/// Which level the small-window occupation is measured at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftMode {
    /// The fixed level x = 0, wherever the path actually is.
    LevelZero,
    /// The level the path occupies when the window opens.
    WindowStart,
}

/// Fit of E L^n over shrinking windows against the window length.
#[derive(Debug, Clone, Serialize)]
pub struct MomentScalingReport {
    pub n_moment: u32,
    pub shift: ShiftMode,
    pub h_grid: Vec<f64>,
    /// Monte Carlo estimate of E L(x*, [s, s+h])^n per window size.
    pub moments: Vec<f64>,
    /// Fraction of paths that visit the level band, per window size.
    pub occupation: Vec<f64>,
    pub slope: f64,
    pub slope_stderr: f64,
    pub r_squared: f64,
    pub predicted_slope: f64,
}

/// Fit of E |L(y) - L(0)| over the unit interval against the level gap.
#[derive(Debug, Clone, Serialize)]
pub struct SpaceHolderReport {
    pub gamma: f64,
    pub y_grid: Vec<f64>,
    /// Monte Carlo estimate of E |L(y, [0,1]) - L(0, [0,1])| per level.
    pub diffs: Vec<f64>,
    pub slope: f64,
    pub slope_stderr: f64,
    pub r_squared: f64,
    /// Smallest slope compatible with the claimed exponent.
    pub required_slope: f64,
}

fn checked_ascending(
    name: &'static str,
    grid: &[f64],
    min_len: usize,
) -> Result<(), LoctimeError> {
    if grid.len() < min_len {
        return Err(LoctimeError::InvalidParam {
            name,
            value: grid.len() as f64,
            expected: "at least three grid values",
        });
    }
    for pair in grid.windows(2) {
        if !(pair[0] > 0.0 && pair[1] > pair[0] && pair[1].is_finite()) {
            return Err(LoctimeError::InvalidParam {
                name,
                value: pair[1],
                expected: "a strictly ascending grid of positive values",
            });
        }
    }
    Ok(())
}

/// Occupation density of the band `level +- width/2` within the index
/// window, in time per unit length.
fn band_density(values: &[f64], level: f64, width: f64, dt: f64) -> (f64, bool) {
    let half = 0.5 * width;
    let count = values
        .iter()
        .filter(|&&v| (v - level).abs() < half)
        .count();
    (count as f64 * dt / width, count > 0)
}

/// Fits the growth of E L(x*, [s, s+h])^n on shrinking windows [s, s+h]
/// against h and compares it with the predicted exponent (1 - H) n.
///
/// Windows open at s = 1/2 on unit-horizon paths; the level is resolved
/// within a band scaling like the window's own spatial footprint h^H.
pub fn verify_moment_scaling(
    hurst: Hurst,
    n_moment: u32,
    h_grid: &[f64],
    n_paths: usize,
    rng: &mut impl Rng,
    shift: ShiftMode,
) -> Result<MomentScalingReport, LoctimeError> {
    if !(1..=4).contains(&n_moment) {
        return Err(LoctimeError::InvalidParam {
            name: "n_moment",
            value: n_moment as f64,
            expected: "a moment order between 1 and 4",
        });
    }
    if n_paths < 2 {
        return Err(LoctimeError::InvalidParam {
            name: "n_paths",
            value: n_paths as f64,
            expected: "at least two paths",
        });
    }
    checked_ascending("h_grid", h_grid, 3)?;
    let (h_min, h_max) = (h_grid[0], h_grid[h_grid.len() - 1]);
    if h_max / h_min < 10.0 * (1.0 - 1e-9) {
        return Err(LoctimeError::InvalidParam {
            name: "h_grid",
            value: h_max / h_min,
            expected: "window sizes spanning at least a decade",
        });
    }
    if WINDOW_START + h_max > 1.0 + 1e-9 {
        return Err(LoctimeError::InvalidParam {
            name: "h_grid",
            value: h_max,
            expected: "windows that fit between s = 1/2 and the unit horizon",
        });
    }
    let dt = 1.0 / N_STEPS as f64;
    if h_min < 20.0 * dt {
        return Err(LoctimeError::Resolution {
            scale: h_min,
            min_scale: 20.0 * dt,
        });
    }

    let seed = rng.next_u64();
    let paths = sample_paths(hurst, N_STEPS, 1.0, seed, INTERNAL_FACTOR, n_paths)?;
    let s_idx = (WINDOW_START / dt).round() as usize;
    let h_exp = hurst.get();

    let mut moments = Vec::with_capacity(h_grid.len());
    let mut occupation = Vec::with_capacity(h_grid.len());
    for &h in h_grid {
        let n_win = (h / dt).round() as usize;
        let width = BAND_FACTOR * h.powf(h_exp);
        let mut acc = 0.0;
        let mut occupied = 0usize;
        for path in &paths {
            let window = &path.values()[s_idx..s_idx + n_win];
            let level = match shift {
                ShiftMode::LevelZero => 0.0,
                ShiftMode::WindowStart => path.values()[s_idx],
            };
            let (density, visited) = band_density(window, level, width, dt);
            acc += density.powi(n_moment as i32);
            occupied += visited as usize;
        }
        moments.push(acc / n_paths as f64);
        occupation.push(occupied as f64 / n_paths as f64);
    }
    if occupation[0] < MIN_OCCUPATION {
        return Err(LoctimeError::InsufficientOccupation {
            fraction: 100.0 * occupation[0],
            required: 100.0 * MIN_OCCUPATION,
        });
    }

    let fit = log_log_fit(h_grid, &moments);
    Ok(MomentScalingReport {
        n_moment,
        shift,
        h_grid: h_grid.to_vec(),
        moments,
        occupation,
        slope: fit.slope,
        slope_stderr: fit.slope_stderr,
        r_squared: fit.r_squared,
        predicted_slope: (1.0 - h_exp) * n_moment as f64,
    })
}

/// Fits the mean absolute difference E |L(y, [0,1]) - L(0, [0,1])|
/// against the level gap y and reports the slope floor gamma - 0.1 that
/// a claimed spatial exponent gamma must clear.
pub fn verify_space_holder(
    hurst: Hurst,
    gamma: f64,
    y_grid: &[f64],
    n_paths: usize,
    rng: &mut impl Rng,
) -> Result<SpaceHolderReport, LoctimeError> {
    let h = hurst.get();
    let limit = (1.0 - h) / (2.0 * h);
    if !(gamma > 0.0 && gamma < limit) {
        return Err(LoctimeError::InvalidParam {
            name: "gamma",
            value: gamma,
            expected: "an exponent strictly between 0 and (1-H)/(2H)",
        });
    }
    if n_paths < 2 {
        return Err(LoctimeError::InvalidParam {
            name: "n_paths",
            value: n_paths as f64,
            expected: "at least two paths",
        });
    }
    checked_ascending("y_grid", y_grid, 3)?;

    let dt = 1.0 / N_STEPS as f64;
    let width = 0.5 * y_grid[0];
    let seed = rng.next_u64();
    let paths = sample_paths(hurst, N_STEPS, 1.0, seed, INTERNAL_FACTOR, n_paths)?;

    let mut diffs = vec![0.0; y_grid.len()];
    for path in &paths {
        let values = &path.values()[..N_STEPS];
        let (at_zero, _) = band_density(values, 0.0, width, dt);
        for (iy, &y) in y_grid.iter().enumerate() {
            let (at_y, _) = band_density(values, y, width, dt);
            diffs[iy] += (at_y - at_zero).abs();
        }
    }
    for d in &mut diffs {
        *d /= n_paths as f64;
    }
    if diffs.iter().any(|&d| d <= 0.0) {
        return Err(LoctimeError::InsufficientOccupation {
            fraction: 0.0,
            required: 100.0 * MIN_OCCUPATION,
        });
    }

    let fit = log_log_fit(y_grid, &diffs);
    Ok(SpaceHolderReport {
        gamma,
        y_grid: y_grid.to_vec(),
        diffs,
        slope: fit.slope,
        slope_stderr: fit.slope_stderr,
        r_squared: fit.r_squared,
        required_slope: gamma - 0.1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn hurst(h: f64) -> Hurst {
        Hurst::new(h).unwrap()
    }

    fn dyadic_h_grid() -> Vec<f64> {
        (0..=4).map(|i| (2.0f64).powi(i - 9)).collect()
    }

    #[test]
    fn rejects_bad_orders_grids_and_exponents() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let grid = dyadic_h_grid();
        for n in [0, 5] {
            assert!(matches!(
                verify_moment_scaling(hurst(0.7), n, &grid, 10, &mut rng, ShiftMode::WindowStart),
                Err(LoctimeError::InvalidParam {
                    name: "n_moment",
                    ..
                })
            ));
        }
        let narrow = [0.01, 0.02, 0.05];
        assert!(matches!(
            verify_moment_scaling(hurst(0.7), 1, &narrow, 10, &mut rng, ShiftMode::WindowStart),
            Err(LoctimeError::InvalidParam { name: "h_grid", .. })
        ));
        let unresolved = [1e-5, 1e-4, 1e-3];
        assert!(matches!(
            verify_moment_scaling(
                hurst(0.7),
                1,
                &unresolved,
                10,
                &mut rng,
                ShiftMode::WindowStart
            ),
            Err(LoctimeError::Resolution { .. })
        ));
        let oversized = [0.05, 0.2, 0.6];
        assert!(matches!(
            verify_moment_scaling(
                hurst(0.7),
                1,
                &oversized,
                10,
                &mut rng,
                ShiftMode::WindowStart
            ),
            Err(LoctimeError::InvalidParam { name: "h_grid", .. })
        ));
        for gamma in [0.0, 0.25] {
            assert!(matches!(
                verify_space_holder(hurst(0.7), gamma, &[0.1, 0.2, 0.4], 10, &mut rng),
                Err(LoctimeError::InvalidParam { name: "gamma", .. })
            ));
        }
    }

    #[test]
    fn window_moments_grow_like_the_predicted_power() {
        let mut rng = ChaCha12Rng::seed_from_u64(71);
        let report = verify_moment_scaling(
            hurst(0.7),
            1,
            &dyadic_h_grid(),
            300,
            &mut rng,
            ShiftMode::WindowStart,
        )
        .unwrap();
        assert!(
            report.slope >= report.predicted_slope - 0.1
                && report.slope <= report.predicted_slope + 0.15,
            "slope {} vs predicted {}",
            report.slope,
            report.predicted_slope
        );
    }

    #[test]
    fn fixed_interior_level_is_rarely_occupied() {
        let mut rng = ChaCha12Rng::seed_from_u64(72);
        let err = verify_moment_scaling(
            hurst(0.7),
            1,
            &dyadic_h_grid(),
            100,
            &mut rng,
            ShiftMode::LevelZero,
        );
        assert!(matches!(
            err,
            Err(LoctimeError::InsufficientOccupation { .. })
        ));
    }

    #[test]
    fn occupation_differences_scale_with_the_level_gap() {
        let mut rng = ChaCha12Rng::seed_from_u64(73);
        let report = verify_space_holder(
            hurst(0.7),
            0.15,
            &[0.05, 0.1, 0.2, 0.4, 0.8],
            200,
            &mut rng,
        )
        .unwrap();
        assert!(
            report.slope >= report.required_slope,
            "slope {} below {}",
            report.slope,
            report.required_slope
        );
    }
}
