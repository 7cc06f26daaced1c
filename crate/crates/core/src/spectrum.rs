//! Signed spectra with discretization metadata and tail accounting.

use crate::CoreError;
use serde::{Deserialize, Serialize};

/// Eigenvalues of a discretized operator, sorted by magnitude.
///
/// Stores the signed values; singular values are their absolute values in the
/// same (nonincreasing-magnitude) order. `tail_second_moment` carries the part
/// of the squared Hilbert-Schmidt mass that the discretization window does not
/// resolve, so that `total_second_moment` is exact whenever a closed form for
/// the full mass is available.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    discretization_size: usize,
    truncation_radius: Option<f64>,
    residual_imag: f64,
    tail_second_moment: f64,
}

impl Spectrum {
    /// Wraps signed eigenvalues; they are re-sorted by decreasing magnitude.
    pub fn new(
        mut eigenvalues: Vec<f64>,
        discretization_size: usize,
        truncation_radius: Option<f64>,
        residual_imag: f64,
        tail_second_moment: f64,
    ) -> Result<Self, CoreError> {
        for &v in &eigenvalues {
            if !v.is_finite() {
                return Err(CoreError::NonFinite {
                    what: "eigenvalue",
                    value: v,
                });
            }
        }
        if !residual_imag.is_finite() || residual_imag < 0.0 {
            return Err(CoreError::NegativeResidual {
                value: residual_imag,
            });
        }
        if !tail_second_moment.is_finite() {
            return Err(CoreError::NonFinite {
                what: "tail second moment",
                value: tail_second_moment,
            });
        }
        eigenvalues.sort_by(|a, b| {
            b.abs()
                .partial_cmp(&a.abs())
                .expect("eigenvalues are finite")
        });
        // Tiny negative tails arise when the resolved mass slightly overshoots
        // an exact total; treat them as zero.
        let tail = tail_second_moment.max(0.0);
        Ok(Spectrum {
            eigenvalues,
            discretization_size,
            truncation_radius,
            residual_imag,
            tail_second_moment: tail,
        })
    }

    /// Signed eigenvalues, nonincreasing in magnitude.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Absolute eigenvalues; nonincreasing.
    pub fn singular_values(&self) -> Vec<f64> {
        self.eigenvalues.iter().map(|v| v.abs()).collect()
    }

    /// Number of cells or nodes in the underlying discretization.
    pub fn discretization_size(&self) -> usize {
        self.discretization_size
    }

    /// Spatial window radius for frequency-side discretizations, if any.
    pub fn truncation_radius(&self) -> Option<f64> {
        self.truncation_radius
    }

    /// Largest imaginary or asymmetry defect discarded when realizing the
    /// spectrum as real numbers.
    pub fn residual_imag(&self) -> f64 {
        self.residual_imag
    }

    /// Unresolved squared mass beyond the retained eigenvalues.
    pub fn tail_second_moment(&self) -> f64 {
        self.tail_second_moment
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// Sum of squared retained eigenvalues.
    pub fn second_moment(&self) -> f64 {
        self.eigenvalues.iter().map(|v| v * v).sum()
    }

    /// Retained squared mass plus the unresolved tail.
    pub fn total_second_moment(&self) -> f64 {
        self.second_moment() + self.tail_second_moment
    }

    /// Sum of cubed signed eigenvalues (third-cumulant building block).
    pub fn third_moment(&self) -> f64 {
        self.eigenvalues.iter().map(|v| v * v * v).sum()
    }

    /// Rescales every eigenvalue by `factor` (tail mass scales quadratically).
    pub fn scaled_by(&self, factor: f64) -> Spectrum {
        let eigenvalues = self.eigenvalues.iter().map(|v| v * factor).collect();
        Spectrum {
            eigenvalues,
            discretization_size: self.discretization_size,
            truncation_radius: self.truncation_radius,
            residual_imag: self.residual_imag * factor.abs(),
            tail_second_moment: self.tail_second_moment * factor * factor,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn sorts_by_magnitude_and_exposes_singular_values() {
        let s = Spectrum::new(vec![0.1, -2.0, 1.5], 100, Some(60.0), 0.0, 0.0).unwrap();
        assert_eq!(s.eigenvalues(), &[-2.0, 1.5, 0.1]);
        assert_eq!(s.singular_values(), vec![2.0, 1.5, 0.1]);
    }

    #[test]
    fn moments_include_tail() {
        let s = Spectrum::new(vec![1.0, -1.0], 10, None, 0.0, 0.5).unwrap();
        assert_relative_eq!(s.second_moment(), 2.0);
        assert_relative_eq!(s.total_second_moment(), 2.5);
        assert_relative_eq!(s.third_moment(), 0.0);
    }

    #[test]
    fn scaling_is_quadratic_in_the_tail() {
        let s = Spectrum::new(vec![1.0, 0.5], 10, None, 1e-12, 0.25).unwrap();
        let t = s.scaled_by(2.0);
        assert_eq!(t.eigenvalues(), &[2.0, 1.0]);
        assert_relative_eq!(t.tail_second_moment(), 1.0);
        assert_relative_eq!(t.total_second_moment(), 4.0 * s.total_second_moment());
    }

    #[test]
    fn rejects_non_finite_and_negative_residual() {
        assert!(Spectrum::new(vec![f64::NAN], 1, None, 0.0, 0.0).is_err());
        assert!(Spectrum::new(vec![1.0], 1, None, -1.0, 0.0).is_err());
    }
}
