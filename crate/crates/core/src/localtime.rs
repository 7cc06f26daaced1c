//! Local-time estimates on a uniform spatial grid.

use crate::CoreError;
use serde::{Deserialize, Serialize};

/// Which estimator produced a local-time density.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LocalTimeMethod {
    /// Occupation counting over spatial bins.
    Histogram,
    /// Band-limited inversion of the empirical characteristic function.
    Fourier,
}

/// Occupation density of a path over a time interval, sampled on a uniform
/// spatial grid of bin centers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalTimeEstimate {
    interval: (f64, f64),
    bin_width: f64,
    x_grid: Vec<f64>,
    density: Vec<f64>,
    method: LocalTimeMethod,
    /// Frequency cutoff for the band-limited estimator (none for histograms).
    cutoff: Option<f64>,
    /// Total negative mass removed when clipping (zero for histograms).
    clipped_mass: f64,
}

impl LocalTimeEstimate {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        interval: (f64, f64),
        bin_width: f64,
        x_grid: Vec<f64>,
        density: Vec<f64>,
        method: LocalTimeMethod,
        cutoff: Option<f64>,
        clipped_mass: f64,
    ) -> Result<Self, CoreError> {
        if !(interval.0.is_finite() && interval.1.is_finite() && interval.1 > interval.0) {
            return Err(CoreError::EmptyInterval {
                a: interval.0,
                b: interval.1,
            });
        }
        if !(bin_width.is_finite() && bin_width > 0.0) {
            return Err(CoreError::InvalidBinWidth { value: bin_width });
        }
        if x_grid.len() != density.len() {
            return Err(CoreError::GridLengthMismatch {
                grid: x_grid.len(),
                density: density.len(),
            });
        }
        for (index, &d) in density.iter().enumerate() {
            if !d.is_finite() {
                return Err(CoreError::NonFinite {
                    what: "local-time density",
                    value: d,
                });
            }
            if d < 0.0 {
                return Err(CoreError::NegativeDensity { index, value: d });
            }
        }
        Ok(LocalTimeEstimate {
            interval,
            bin_width,
            x_grid,
            density,
            method,
            cutoff,
            clipped_mass,
        })
    }

    /// Time interval the estimate covers.
    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    /// Spatial bin width of the grid.
    pub fn bin_width(&self) -> f64 {
        self.bin_width
    }

    /// Bin centers.
    pub fn x_grid(&self) -> &[f64] {
        &self.x_grid
    }

    /// Density values at the bin centers.
    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn method(&self) -> LocalTimeMethod {
        self.method
    }

    pub fn cutoff(&self) -> Option<f64> {
        self.cutoff
    }

    /// Negative mass discarded by clipping, in time units.
    pub fn clipped_mass(&self) -> f64 {
        self.clipped_mass
    }

    /// Integral of the density over the grid (time spent in the window).
    pub fn mass(&self) -> f64 {
        self.density.iter().sum::<f64>() * self.bin_width
    }

    /// Density evaluated at the grid point closest to `x`, or zero outside.
    pub fn density_at(&self, x: f64) -> f64 {
        if self.x_grid.is_empty() {
            return 0.0;
        }
        let first = self.x_grid[0];
        let idx = ((x - first) / self.bin_width).round();
        if idx < 0.0 || idx >= self.x_grid.len() as f64 {
            0.0
        } else {
            self.density[idx as usize]
        }
    }
}
