//! Step profiles: finite collections of time points with coefficients.
//!
//! A profile pairs strictly increasing positive times `t_1 < ... < t_n` with
//! coefficients `xi_1, ..., xi_n`. The equivalent "level" representation
//! `xi'_j = sum_{l >= j} xi_l` describes the same linear functional as a step
//! function that takes the value `xi'_j` on `(t_{j-1}, t_j]`; both views are
//! needed because the operator factorizations work on levels while the
//! characteristic functionals work on coefficients.

use crate::CoreError;
use serde::{Deserialize, Serialize};

/// Time points with coefficients, plus the derived level representation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepProfile {
    times: Vec<f64>,
    coefficients: Vec<f64>,
    levels: Vec<f64>,
}

impl StepProfile {
    /// Builds a profile from times and per-time coefficients.
    pub fn from_coefficients(times: Vec<f64>, coefficients: Vec<f64>) -> Result<Self, CoreError> {
        validate_times(&times)?;
        if times.len() != coefficients.len() {
            return Err(CoreError::ProfileLengthMismatch {
                times: times.len(),
                coeffs: coefficients.len(),
            });
        }
        for &c in &coefficients {
            if !c.is_finite() {
                return Err(CoreError::NonFinite {
                    what: "profile coefficient",
                    value: c,
                });
            }
        }
        let levels = suffix_sums(&coefficients);
        Ok(StepProfile {
            times,
            coefficients,
            levels,
        })
    }

    /// Builds a profile from times and levels (step values on `(t_{j-1}, t_j]`).
    pub fn from_levels(times: Vec<f64>, levels: Vec<f64>) -> Result<Self, CoreError> {
        validate_times(&times)?;
        if times.len() != levels.len() {
            return Err(CoreError::ProfileLengthMismatch {
                times: times.len(),
                coeffs: levels.len(),
            });
        }
        for &l in &levels {
            if !l.is_finite() {
                return Err(CoreError::NonFinite {
                    what: "profile level",
                    value: l,
                });
            }
        }
        let coefficients = adjacent_differences(&levels);
        Ok(StepProfile {
            times,
            coefficients,
            levels,
        })
    }

    /// Single time point with unit coefficient.
    pub fn unit_at(t: f64) -> Result<Self, CoreError> {
        StepProfile::from_coefficients(vec![t], vec![1.0])
    }

    /// Number of time points.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// True when the profile has no time points (never constructible).
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Strictly increasing positive times.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Coefficients `xi_j` attached to each time point.
    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    /// Levels `xi'_j = sum_{l >= j} xi_l`; the step value on `(t_{j-1}, t_j]`.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Largest time point.
    pub fn t_max(&self) -> f64 {
        *self.times.last().expect("profile is never empty")
    }

    /// Interval endpoints `0 = s_0 < s_1 < ... < s_n` bounding the level steps.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = Vec::with_capacity(self.times.len() + 1);
        pts.push(0.0);
        pts.extend_from_slice(&self.times);
        pts
    }
}

fn validate_times(times: &[f64]) -> Result<(), CoreError> {
    if times.is_empty() {
        return Err(CoreError::EmptyProfile);
    }
    let mut prev = 0.0;
    for (index, &t) in times.iter().enumerate() {
        if !t.is_finite() {
            return Err(CoreError::NonFinite {
                what: "profile time",
                value: t,
            });
        }
        if t <= prev {
            return Err(CoreError::ProfileTimesNotIncreasing { index });
        }
        prev = t;
    }
    Ok(())
}

fn suffix_sums(coefficients: &[f64]) -> Vec<f64> {
    let mut levels = vec![0.0; coefficients.len()];
    let mut acc = 0.0;
    for (j, &c) in coefficients.iter().enumerate().rev() {
        acc += c;
        levels[j] = acc;
    }
    levels
}

fn adjacent_differences(levels: &[f64]) -> Vec<f64> {
    let n = levels.len();
    let mut coeffs = vec![0.0; n];
    for j in 0..n {
        let next = if j + 1 < n { levels[j + 1] } else { 0.0 };
        coeffs[j] = levels[j] - next;
    }
    coeffs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn levels_are_suffix_sums() {
        let p = StepProfile::from_coefficients(vec![0.5, 1.0, 2.0], vec![1.0, -2.0, 0.5]).unwrap();
        assert_eq!(p.levels(), &[-0.5, -1.5, 0.5]);
    }

    #[test]
    fn levels_view_matches_coefficient_view() {
        let p = StepProfile::from_levels(vec![1.0, 3.0], vec![2.0, -1.0]).unwrap();
        assert_eq!(p.coefficients(), &[3.0, -1.0]);
        let q = StepProfile::from_coefficients(vec![1.0, 3.0], vec![3.0, -1.0]).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn rejects_bad_times() {
        assert!(StepProfile::from_coefficients(vec![], vec![]).is_err());
        assert!(StepProfile::from_coefficients(vec![0.0], vec![1.0]).is_err());
        assert!(StepProfile::from_coefficients(vec![-1.0], vec![1.0]).is_err());
        assert!(StepProfile::from_coefficients(vec![1.0, 1.0], vec![1.0, 2.0]).is_err());
        assert!(StepProfile::from_coefficients(vec![2.0, 1.0], vec![1.0, 2.0]).is_err());
        assert!(StepProfile::from_coefficients(vec![1.0], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn breakpoints_prepend_zero() {
        let p = StepProfile::from_coefficients(vec![0.5, 2.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(p.breakpoints(), vec![0.0, 0.5, 2.0]);
    }

    proptest! {
        // Dyadic coefficients keep every suffix sum exactly representable, so
        // the two representations must convert back and forth bit for bit.
        #[test]
        fn round_trip_is_exact_on_dyadic_grids(
            raw in prop::collection::vec(-256i32..=256i32, 1..8)
        ) {
            let coeffs: Vec<f64> = raw.iter().map(|&k| f64::from(k) / 64.0).collect();
            let times: Vec<f64> = (1..=coeffs.len()).map(|i| i as f64 * 0.5).collect();
            let p = StepProfile::from_coefficients(times.clone(), coeffs.clone()).unwrap();
            let q = StepProfile::from_levels(times, p.levels().to_vec()).unwrap();
            prop_assert_eq!(q.coefficients(), coeffs.as_slice());
            prop_assert_eq!(q.levels(), p.levels());
        }
    }
}
