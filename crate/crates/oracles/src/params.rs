use rosenlab_core::Hurst;
use serde::Serialize;

use crate::OracleError;

/// Parameters of the inverse-peak moment: a self-similarity index `hurst`
/// and one weight exponent per coordinate.
///
/// Admissibility requires `0 < hurst < 1` and `0 <= gamma_j < 1/hurst - 1`
/// for every coordinate; the upper bound on each exponent is exactly what
/// keeps the moment finite. The index range is wider than [`Hurst`] on
/// purpose so the reference integrals can be probed outside the regime the
/// rest of the toolkit works in.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PeakParams {
    hurst: f64,
    gammas: Vec<f64>,
}

impl PeakParams {
    pub fn new(hurst: f64, gammas: &[f64]) -> Result<Self, OracleError> {
        if !hurst.is_finite() || hurst <= 0.0 || hurst >= 1.0 {
            return Err(OracleError::Domain {
                name: "hurst",
                value: hurst,
                expected: "a value in (0, 1)".to_string(),
            });
        }
        if gammas.is_empty() {
            return Err(OracleError::Domain {
                name: "gammas",
                value: 0.0,
                expected: "at least one weight exponent".to_string(),
            });
        }
        let limit = 1.0 / hurst - 1.0;
        for &g in gammas {
            if !g.is_finite() || g < 0.0 || g >= limit {
                return Err(OracleError::Domain {
                    name: "gamma",
                    value: g,
                    expected: format!("a value in [0, {limit:.6}) for hurst = {hurst}"),
                });
            }
        }
        Ok(Self {
            hurst,
            gammas: gammas.to_vec(),
        })
    }

    /// Convenience constructor from the toolkit-wide index newtype.
    pub fn with_hurst(hurst: Hurst, gammas: &[f64]) -> Result<Self, OracleError> {
        Self::new(hurst.get(), gammas)
    }

    pub fn hurst(&self) -> f64 {
        self.hurst
    }

    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    /// Number of coordinates.
    pub fn n(&self) -> usize {
        self.gammas.len()
    }

    /// Average weight exponent.
    pub fn gamma_av(&self) -> f64 {
        self.gammas.iter().sum::<f64>() / self.gammas.len() as f64
    }

    /// Order of the inverse-peak moment, `n (1 + avg gamma)`.
    pub(crate) fn moment_order(&self) -> f64 {
        self.gammas.len() as f64 * (1.0 + self.gamma_av())
    }
}
