//! Marginal spectra from the unit spectrum via self-similarity.

use crate::CharFnError;
use rosenlab_core::{Hurst, Spectrum};

/// Spectrum of the marginal ξ·Z_t derived from the unit spectrum (t = 1,
/// ξ = 1) by the exact scaling λ_k(t, ξ) = ξ t^H λ_k(1, 1).
pub fn marginal_spectrum(
    unit: &Spectrum,
    hurst: Hurst,
    t: f64,
    xi: f64,
) -> Result<Spectrum, CharFnError> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(CharFnError::InvalidParam {
            name: "t",
            value: t,
            expected: "a positive finite time",
        });
    }
    if !xi.is_finite() {
        return Err(CharFnError::InvalidParam {
            name: "xi",
            value: xi,
            expected: "a finite coefficient",
        });
    }
    Ok(unit.scaled_by(xi * t.powf(hurst.get())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::product::char_modulus;
    use rosenlab_core::StepProfile;
    use rosenlab_spectrum::{eig_spectral_domain, SpectralDomainOperator};

    fn unit_spectrum(h: Hurst, radius: f64, cells: usize) -> Spectrum {
        let op = SpectralDomainOperator::with_resolution(
            h,
            StepProfile::unit_at(1.0).unwrap(),
            radius,
            cells,
            2,
        )
        .unwrap();
        eig_spectral_domain(&op, 1.0).unwrap()
    }

    #[test]
    fn identity_scaling_is_exact() {
        let h = Hurst::new(0.7).unwrap();
        let unit = unit_spectrum(h, 30.0, 60);
        let same = marginal_spectrum(&unit, h, 1.0, 1.0).unwrap();
        assert_eq!(unit.eigenvalues(), same.eigenvalues());
        assert_eq!(unit.tail_second_moment(), same.tail_second_moment());
    }

    #[test]
    fn sign_flip_preserves_the_modulus() {
        let h = Hurst::new(0.7).unwrap();
        let unit = unit_spectrum(h, 30.0, 60);
        let plus = marginal_spectrum(&unit, h, 0.8, 1.0).unwrap();
        let minus = marginal_spectrum(&unit, h, 0.8, -1.0).unwrap();
        assert_eq!(char_modulus(&plus), char_modulus(&minus));
        assert_eq!(plus.singular_values(), minus.singular_values());
    }

    #[test]
    fn rejects_nonpositive_times() {
        let h = Hurst::new(0.7).unwrap();
        let unit = unit_spectrum(h, 20.0, 40);
        assert!(matches!(
            marginal_spectrum(&unit, h, 0.0, 1.0),
            Err(CharFnError::InvalidParam { .. })
        ));
        assert!(matches!(
            marginal_spectrum(&unit, h, f64::NAN, 1.0),
            Err(CharFnError::InvalidParam { .. })
        ));
    }

    #[test]
    fn scaled_unit_spectrum_matches_a_direct_solve_at_t_four() {
        // The scaled window keeps the effective truncation identical on
        // both sides, so the comparison isolates the scaling law and the
        // cell-density error.
        let h = Hurst::new(0.7).unwrap();
        let unit = unit_spectrum(h, 240.0, 480);
        let scaled = marginal_spectrum(&unit, h, 4.0, 1.0).unwrap();
        let op = SpectralDomainOperator::with_resolution(
            h,
            StepProfile::unit_at(4.0).unwrap(),
            60.0,
            240,
            2,
        )
        .unwrap();
        let direct = eig_spectral_domain(&op, 1.0).unwrap();
        for k in 0..10 {
            let a = scaled.singular_values()[k];
            let b = direct.singular_values()[k];
            assert!(
                (a - b).abs() / b < 1e-3,
                "k={k}: scaled {a} vs direct {b}"
            );
        }
        // The factor itself: 4^{0.7} on the leading eigenvalue.
        let factor = scaled.singular_values()[0] / unit.singular_values()[0];
        assert!((factor - 4.0f64.powf(0.7)).abs() < 1e-12);
    }
}
