//! Product-form characteristic functionals of centered chi-squared sums.
//!
//! A spectrum (λ_k) describes the law Σ λ_k (X_k² − 1) with X_k i.i.d.
//! standard normal. Its characteristic function at argument 1 is the
//! product Π e^{−iλ_k} / √(1 − 2iλ_k); other arguments are reached by
//! scaling the spectrum first.

use num_complex::Complex64;
use rosenlab_core::Spectrum;

/// Modulus of the characteristic function: Π (1 + 4λ_k²)^{−1/4}, with a
/// first-order factor exp(−Σ_tail λ²) standing in for the unresolved tail
/// mass recorded on the spectrum.
pub fn char_modulus(spec: &Spectrum) -> f64 {
    let log_product: f64 = spec
        .eigenvalues()
        .iter()
        .map(|&l| (4.0 * l * l).ln_1p())
        .sum();
    (-0.25 * log_product - spec.tail_second_moment()).exp()
}

/// Allocation-free modulus of the characteristic function of `r` times a
/// spectrum given as raw parts, for quadrature inner loops.
pub(crate) fn modulus_scaled(eigenvalues: &[f64], tail_second_moment: f64, r: f64) -> f64 {
    let r2 = r * r;
    let log_product: f64 = eigenvalues
        .iter()
        .map(|&l| (4.0 * r2 * l * l).ln_1p())
        .sum();
    (-0.25 * log_product - r2 * tail_second_moment).exp()
}

/// Complex characteristic function Π e^{−iλ_k}/√(1 − 2iλ_k), with the same
/// tail factor as [`char_modulus`]. The tail's imaginary correction is one
/// order smaller than its real part and is not modeled.
pub fn char_complex(spec: &Spectrum) -> Complex64 {
    let mut log_sum = Complex64::new(-spec.tail_second_moment(), 0.0);
    for &l in spec.eigenvalues() {
        let root = Complex64::new(1.0, -2.0 * l);
        log_sum += Complex64::new(0.0, -l) - 0.5 * root.ln();
    }
    log_sum.exp()
}

/// A spectrum bundled with its characteristic-functional evaluation.
#[derive(Debug, Clone)]
pub struct CharFunctional {
    spectrum: Spectrum,
    value: Complex64,
    modulus: f64,
}

impl CharFunctional {
    pub fn evaluate(spectrum: Spectrum) -> Self {
        let value = char_complex(&spectrum);
        let modulus = char_modulus(&spectrum);
        Self {
            spectrum,
            value,
            modulus,
        }
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// Always in (0, 1]; equals 1 exactly when the spectrum vanishes.
    pub fn modulus(&self) -> f64 {
        self.modulus
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spectrum_from(eigs: Vec<f64>) -> Spectrum {
        let n = eigs.len().max(1);
        Spectrum::new(eigs, n, None, 0.0, 0.0).unwrap()
    }

    fn decaying_spectrum() -> Spectrum {
        spectrum_from((1..=200).map(|k| 0.3 * (k as f64).powf(-0.8)).collect())
    }

    #[test]
    fn empty_spectrum_evaluates_to_one() {
        let spec = spectrum_from(vec![]);
        assert_eq!(char_modulus(&spec), 1.0);
        let z = char_complex(&spec);
        assert_eq!(z, Complex64::new(1.0, 0.0));
    }

    #[test]
    fn single_eigenvalue_has_closed_form_modulus() {
        let spec = spectrum_from(vec![0.5]);
        assert_relative_eq!(
            char_modulus(&spec),
            2.0f64.powf(-0.25),
            max_relative = 1e-15
        );
    }

    #[test]
    fn complex_and_modulus_forms_agree() {
        let spec = decaying_spectrum();
        let functional = CharFunctional::evaluate(spec);
        assert_relative_eq!(
            functional.value().norm(),
            functional.modulus(),
            max_relative = 1e-12
        );
        assert!(functional.modulus() > 0.0 && functional.modulus() < 1.0);
    }

    #[test]
    fn log_derivatives_recover_the_first_cumulants() {
        let spec = decaying_spectrum();
        let log_phi = |theta: f64| char_complex(&spec.scaled_by(theta)).ln();
        let h = 1e-3;
        // Second cumulant: −d²/dθ² log φ at 0 equals 2Σλ².
        let second = -(log_phi(h) + log_phi(-h) - 2.0 * log_phi(0.0)).re / (h * h);
        assert_relative_eq!(second, 2.0 * spec.second_moment(), max_relative = 1e-4);
        // Third cumulant: i d³/dθ³ log φ at 0 equals 8Σλ³.
        let third = -(log_phi(2.0 * h) - log_phi(-2.0 * h) - 2.0 * (log_phi(h) - log_phi(-h))).im
            / (2.0 * h * h * h);
        assert_relative_eq!(third, 8.0 * spec.third_moment(), max_relative = 1e-4);
    }

    #[test]
    fn tail_mass_scales_with_the_spectrum() {
        // A pure-tail spectrum: the modulus is exp(−tail), and scaling the
        // spectrum by θ scales the exponent by θ².
        let spec = Spectrum::new(vec![], 1, None, 0.0, 0.04).unwrap();
        assert_relative_eq!(char_modulus(&spec), (-0.04f64).exp(), max_relative = 1e-15);
        let scaled = spec.scaled_by(2.0);
        assert_relative_eq!(char_modulus(&scaled), (-0.16f64).exp(), max_relative = 1e-15);
    }
}
