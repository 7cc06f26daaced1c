//! Occupation-density estimators on a sampled path.
//!
//! Both estimators share the same time window convention: the window
//! [a, b] is snapped to the sampling grid and each grid point carries
//! the dt of the subinterval to its right, so window masses tile
//! exactly under concatenation at grid points.

use num_complex::Complex;
use rosenlab_core::{LocalTimeEstimate, LocalTimeMethod, PathSample};
use rustfft::FftPlanner;

use crate::LoctimeError;

/// Snaps [a, b] to the sampling grid and returns the half-open index
/// range of retained points, each standing for the dt to its right.
fn window_indices(path: &PathSample, a: f64, b: f64) -> Result<(usize, usize), LoctimeError> {
    if !a.is_finite() || a < 0.0 {
        return Err(LoctimeError::InvalidParam {
            name: "a",
            value: a,
            expected: "a finite time at or after the path start",
        });
    }
    if !b.is_finite() || b > path.horizon() * (1.0 + 1e-9) {
        return Err(LoctimeError::InvalidParam {
            name: "b",
            value: b,
            expected: "a finite time at or before the path horizon",
        });
    }
    if b <= a {
        return Err(LoctimeError::InvalidParam {
            name: "b",
            value: b,
            expected: "an interval end strictly after its start",
        });
    }
    let dt = path.dt();
    let lo = (a / dt).round().max(0.0) as usize;
    let hi = ((b / dt).round() as usize).min(path.n_steps());
    if hi.saturating_sub(lo) < 2 {
        return Err(LoctimeError::EmptyInterval {
            points: hi.saturating_sub(lo),
        });
    }
    Ok((lo, hi))
}

/// Binned occupation density of the path over [a, b].
///
/// Bin edges sit at integer multiples of `bin_width`, so estimates from
/// different calls land on a shared spatial grid. The returned masses
/// add up to the snapped window length exactly, and concatenating
/// windows at a shared grid point adds the densities bin by bin.
pub fn local_time_histogram(
    path: &PathSample,
    a: f64,
    b: f64,
    bin_width: f64,
) -> Result<LocalTimeEstimate, LoctimeError> {
    if !(bin_width > 0.0) || !bin_width.is_finite() {
        return Err(LoctimeError::InvalidParam {
            name: "bin_width",
            value: bin_width,
            expected: "a positive finite width",
        });
    }
    let (lo, hi) = window_indices(path, a, b)?;
    let dt = path.dt();
    let window = &path.values()[lo..hi];

    let bin_of = |z: f64| (z / bin_width).floor() as i64;
    let (mut jmin, mut jmax) = (i64::MAX, i64::MIN);
    for &z in window {
        let j = bin_of(z);
        jmin = jmin.min(j);
        jmax = jmax.max(j);
    }
    let mut counts = vec![0u64; (jmax - jmin + 1) as usize];
    for &z in window {
        counts[(bin_of(z) - jmin) as usize] += 1;
    }

    let density = counts
        .iter()
        .map(|&c| c as f64 * dt / bin_width)
        .collect();
    let x_grid = (jmin..=jmax)
        .map(|j| (j as f64 + 0.5) * bin_width)
        .collect();
    Ok(LocalTimeEstimate::new(
        (lo as f64 * dt, hi as f64 * dt),
        bin_width,
        x_grid,
        density,
        LocalTimeMethod::Histogram,
        None,
        0.0,
    )?)
}

/// Band-limited occupation density of the path over [a, b].
///
/// The empirical occupation measure is Fourier-transformed in closed
/// form, truncated at `cutoff`, and inverted onto the uniform `x_grid`
/// with an FFT. Negative excursions of the inversion are clipped to
/// zero and their mass reported; clipping beyond 5% of the window
/// length fails with `CutoffTooLow`.
pub fn local_time_fourier(
    path: &PathSample,
    a: f64,
    b: f64,
    x_grid: &[f64],
    cutoff: f64,
) -> Result<LocalTimeEstimate, LoctimeError> {
    let m = x_grid.len();
    if m < 8 {
        return Err(LoctimeError::InvalidParam {
            name: "x_grid",
            value: m as f64,
            expected: "at least 8 evaluation points",
        });
    }
    let dx = x_grid[1] - x_grid[0];
    if !(dx > 0.0) || !dx.is_finite() {
        return Err(LoctimeError::InvalidParam {
            name: "x_grid",
            value: dx,
            expected: "an ascending uniform grid",
        });
    }
    for pair in x_grid.windows(2) {
        if ((pair[1] - pair[0]) - dx).abs() > 1e-9 * dx {
            return Err(LoctimeError::InvalidParam {
                name: "x_grid",
                value: pair[1] - pair[0],
                expected: "uniform spacing throughout the grid",
            });
        }
    }
    if !(cutoff > 0.0) || !cutoff.is_finite() {
        return Err(LoctimeError::InvalidParam {
            name: "cutoff",
            value: cutoff,
            expected: "a positive finite frequency cutoff",
        });
    }
    if cutoff > std::f64::consts::PI / dx * (1.0 + 1e-12) {
        return Err(LoctimeError::InvalidParam {
            name: "cutoff",
            value: cutoff,
            expected: "at most pi divided by the grid spacing",
        });
    }
    let (lo, hi) = window_indices(path, a, b)?;
    let dt = path.dt();
    let window = &path.values()[lo..hi];
    let length = (hi - lo) as f64 * dt;

    let dxi = std::f64::consts::TAU / (m as f64 * dx);
    let n_freq = (cutoff / dxi).floor() as usize;
    if n_freq == 0 {
        return Err(LoctimeError::InvalidParam {
            name: "cutoff",
            value: cutoff,
            expected: "at least one positive frequency node below the cutoff",
        });
    }

    // S_j = sum_k dt exp(-i j dxi Z_k), built per point by repeated
    // multiplication with exp(-i dxi Z_k).
    let mut transform = vec![Complex::new(0.0, 0.0); n_freq + 1];
    for &z in window {
        let step = Complex::from_polar(1.0, -dxi * z);
        let mut power = Complex::new(dt, 0.0);
        for slot in transform.iter_mut() {
            *slot += power;
            power *= step;
        }
    }

    let mut spectrum = vec![Complex::new(0.0, 0.0); m];
    let weight = dxi / std::f64::consts::TAU;
    for (j, &s) in transform.iter().enumerate() {
        let coeff = s * weight * Complex::from_polar(1.0, j as f64 * dxi * x_grid[0]);
        if j == 0 {
            spectrum[0] += coeff;
        } else {
            spectrum[j] += coeff;
            spectrum[m - j] += coeff.conj();
        }
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut spectrum);

    let mut clipped = 0.0;
    let density: Vec<f64> = spectrum
        .iter()
        .map(|c| {
            if c.re < 0.0 {
                clipped -= c.re * dx;
                0.0
            } else {
                c.re
            }
        })
        .collect();
    let limit = 0.05 * length;
    if clipped > limit {
        return Err(LoctimeError::CutoffTooLow { clipped, limit });
    }
    Ok(LocalTimeEstimate::new(
        (lo as f64 * dt, hi as f64 * dt),
        dx,
        x_grid.to_vec(),
        density,
        LocalTimeMethod::Fourier,
        Some(cutoff),
        clipped,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rosenlab_core::{GeneratorKind, Hurst};

    fn ramp_path(n: usize) -> PathSample {
        let values = (0..=n).map(|k| k as f64 / n as f64).collect();
        PathSample::new(
            Hurst::new(0.7).unwrap(),
            1.0 / n as f64,
            values,
            0,
            GeneratorKind::Injected,
        )
        .unwrap()
    }

    #[test]
    fn rejects_bad_windows_and_bins() {
        let path = ramp_path(256);
        assert!(matches!(
            local_time_histogram(&path, 0.5, 0.25, 0.01),
            Err(LoctimeError::InvalidParam { name: "b", .. })
        ));
        assert!(matches!(
            local_time_histogram(&path, -0.1, 0.5, 0.01),
            Err(LoctimeError::InvalidParam { name: "a", .. })
        ));
        assert!(matches!(
            local_time_histogram(&path, 0.0, 1.5, 0.01),
            Err(LoctimeError::InvalidParam { name: "b", .. })
        ));
        assert!(matches!(
            local_time_histogram(&path, 0.0, 1.0, 0.0),
            Err(LoctimeError::InvalidParam {
                name: "bin_width",
                ..
            })
        ));
        let narrow = local_time_histogram(&path, 0.5, 0.5 + 1.2 / 256.0, 0.01);
        assert!(matches!(narrow, Err(LoctimeError::EmptyInterval { .. })));
    }

    #[test]
    fn ramp_occupation_is_flat_with_exact_mass() {
        let path = ramp_path(4096);
        let est = local_time_histogram(&path, 0.0, 1.0, 0.01).unwrap();
        assert!((est.mass() - 1.0).abs() < 1e-12);
        assert_eq!(est.clipped_mass(), 0.0);
        for (&x, &d) in est.x_grid().iter().zip(est.density()) {
            if x > 0.02 && x < 0.98 {
                assert!((d - 1.0).abs() < 0.05, "density {d} at {x}");
            }
        }
    }

    #[test]
    fn density_lookup_matches_the_grid() {
        let path = ramp_path(1024);
        let est = local_time_histogram(&path, 0.0, 1.0, 0.05).unwrap();
        for (&x, &d) in est.x_grid().iter().zip(est.density()) {
            assert_eq!(est.density_at(x), d);
        }
        assert_eq!(est.density_at(-3.0), 0.0);
        assert_eq!(est.density_at(3.0), 0.0);
    }

    #[test]
    fn band_limited_inversion_recovers_the_ramp_density() {
        let path = ramp_path(4096);
        let grid: Vec<f64> = (0..256).map(|i| -0.75 + (i as f64 + 0.5) * 0.01).collect();
        let est = local_time_fourier(&path, 0.0, 1.0, &grid, 250.0).unwrap();
        let recovered = est.mass() - est.clipped_mass();
        assert!((recovered - 1.0).abs() < 1e-9);
        for (&x, &d) in est.x_grid().iter().zip(est.density()) {
            if x > 0.15 && x < 0.85 {
                assert!((d - 1.0).abs() < 0.1, "density {d} at {x}");
            }
            if x < -0.25 {
                assert!(d < 0.1, "leakage {d} at {x}");
            }
        }
    }

    #[test]
    fn fourier_grid_and_cutoff_are_validated() {
        let path = ramp_path(512);
        let coarse: Vec<f64> = (0..16).map(|i| i as f64 * 0.25).collect();
        assert!(matches!(
            local_time_fourier(&path, 0.0, 1.0, &coarse, 100.0),
            Err(LoctimeError::InvalidParam { name: "cutoff", .. })
        ));
        let mut warped = coarse.clone();
        warped[7] += 0.01;
        assert!(matches!(
            local_time_fourier(&path, 0.0, 1.0, &warped, 3.0),
            Err(LoctimeError::InvalidParam { name: "x_grid", .. })
        ));
        assert!(matches!(
            local_time_fourier(&path, 0.0, 1.0, &coarse[..4], 3.0),
            Err(LoctimeError::InvalidParam { name: "x_grid", .. })
        ));
        assert!(matches!(
            local_time_fourier(&path, 0.0, 1.0, &coarse, 0.05),
            Err(LoctimeError::InvalidParam { name: "cutoff", .. })
        ));
    }

    #[test]
    fn concentrated_occupation_with_a_low_cutoff_reports_clipping() {
        let values = vec![0.0; 257];
        let path = PathSample::new(
            Hurst::new(0.7).unwrap(),
            1.0 / 256.0,
            values,
            0,
            GeneratorKind::Injected,
        )
        .unwrap();
        let grid: Vec<f64> = (0..128).map(|i| -3.2 + (i as f64 + 0.5) * 0.05).collect();
        let err = local_time_fourier(&path, 0.0, 1.0, &grid, 20.0);
        assert!(matches!(err, Err(LoctimeError::CutoffTooLow { .. })));
    }
}
