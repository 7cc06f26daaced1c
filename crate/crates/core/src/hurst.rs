//! Validated Hurst parameter for the second-chaos regime.

use crate::CoreError;
use serde::{Deserialize, Serialize};

/// Hurst parameter restricted to the open interval (1/2, 1).
///
/// The restriction is structural: the processes handled by this toolkit only
/// exist for `h` strictly between one half and one, and several derived
/// exponents below degenerate at the endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Hurst(f64);

impl Hurst {
    /// Validates `0.5 < h < 1.0` and wraps the value.
    pub fn new(h: f64) -> Result<Self, CoreError> {
        if h.is_finite() && h > 0.5 && h < 1.0 {
            Ok(Hurst(h))
        } else {
            Err(CoreError::InvalidHurst { value: h })
        }
    }

    /// Raw value.
    pub fn get(self) -> f64 {
        self.0
    }

    /// Kernel exponent `h / 2` used by the symmetric factorizations.
    pub fn alpha(self) -> f64 {
        self.0 / 2.0
    }

    /// Supremum of admissible space-regularity exponents, `(1 - h) / (2 h)`.
    pub fn holder_space_limit(self) -> f64 {
        (1.0 - self.0) / (2.0 * self.0)
    }
}

impl TryFrom<f64> for Hurst {
    type Error = CoreError;

    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Hurst::new(value)
    }
}

impl From<Hurst> for f64 {
    fn from(h: Hurst) -> f64 {
        h.0
    }
}

impl std::fmt::Display for Hurst {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn accepts_interior_values() {
        for h in [0.5000001, 0.6, 0.75, 0.9999] {
            assert!(Hurst::new(h).is_ok(), "h = {h} should be valid");
        }
    }

    #[test]
    fn rejects_boundary_and_outside_values() {
        for h in [0.5, 1.0, 0.3, 1.2, -0.7, f64::NAN, f64::INFINITY] {
            assert!(Hurst::new(h).is_err(), "h = {h} should be rejected");
        }
    }

    #[test]
    fn derived_exponents() {
        let h = Hurst::new(0.7).unwrap();
        assert_relative_eq!(h.alpha(), 0.35);
        assert_relative_eq!(h.holder_space_limit(), 0.3 / 1.4, max_relative = 1e-15);
    }

    #[test]
    fn serde_round_trip_validates() {
        let h = Hurst::new(0.85).unwrap();
        let json = serde_json::to_string(&h).unwrap();
        let back: Hurst = serde_json::from_str(&json).unwrap();
        assert_eq!(h, back);
        assert!(serde_json::from_str::<Hurst>("0.4").is_err());
    }
}
