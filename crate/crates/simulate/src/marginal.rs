//! Chi-squared expansion sampler for the time-one marginal.

use crate::SimulateError;
use rand::Rng;
use rand_distr::StandardNormal;
use rosenlab_core::{Hurst, StepProfile};
use rosenlab_spectrum::{eig_spectral_domain, SpectralDomainOperator};

/// Draws Σ_k λ_k (X_k² − 1) + √(2 v_tail) · N from the resolved spectrum
/// of the time-one marginal, with one Gaussian standing in for the
/// unresolved ranks at their exact combined variance.
pub struct MarginalSampler {
    hurst: Hurst,
    eigenvalues: Vec<f64>,
    tail_variance: f64,
    tail_sigma: f64,
}

impl MarginalSampler {
    pub fn new(hurst: Hurst) -> Result<Self, SimulateError> {
        let op = SpectralDomainOperator::new(hurst, StepProfile::unit_at(1.0)?);
        let spec = eig_spectral_domain(&op, 1.0)?;
        // Ranks below the floor act through their second moment only;
        // fold them into the Gaussian tail term.
        let floor = 1e-3
            * spec
                .eigenvalues()
                .iter()
                .fold(0.0f64, |a, &b| a.max(b.abs()));
        let mut eigenvalues = Vec::new();
        let mut tail_variance = spec.tail_second_moment();
        for &l in spec.eigenvalues() {
            if l.abs() >= floor {
                eigenvalues.push(l);
            } else {
                tail_variance += l * l;
            }
        }
        Ok(Self {
            hurst,
            eigenvalues,
            tail_variance,
            tail_sigma: (2.0 * tail_variance).sqrt(),
        })
    }

    pub fn hurst(&self) -> Hurst {
        self.hurst
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn tail_variance(&self) -> f64 {
        self.tail_variance
    }

    /// Largest eigenvalue; the exponential-moment radius is 1/(2λ₁).
    pub fn top_eigenvalue(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b))
    }

    /// 2(Σλ² + v_tail), the variance of the sampled law; 1 by the
    /// normalization of the spectrum.
    pub fn total_variance(&self) -> f64 {
        let resolved: f64 = self.eigenvalues.iter().map(|l| l * l).sum();
        2.0 * (resolved + self.tail_variance)
    }

    pub fn sample_one(&self, rng: &mut impl Rng) -> f64 {
        let mut z = 0.0;
        for &l in &self.eigenvalues {
            let g: f64 = rng.sample(StandardNormal);
            z += l * (g * g - 1.0);
        }
        let tail: f64 = rng.sample(StandardNormal);
        z + self.tail_sigma * tail
    }

    pub fn sample_marginal(&self, rng: &mut impl Rng, count: usize) -> Vec<f64> {
        (0..count).map(|_| self.sample_one(rng)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;
    use rosenlab_charfn::char_modulus;
    use rosenlab_core::Spectrum;

    fn batch_se(values: &[f64], batches: usize) -> (f64, f64) {
        let size = values.len() / batches;
        let means: Vec<f64> = (0..batches)
            .map(|b| values[b * size..(b + 1) * size].iter().sum::<f64>() / size as f64)
            .collect();
        let mean = means.iter().sum::<f64>() / batches as f64;
        let var = means.iter().map(|m| (m - mean) * (m - mean)).sum::<f64>()
            / (batches - 1) as f64;
        (mean, (var / batches as f64).sqrt())
    }

    #[test]
    fn variance_normalization_is_exact() {
        for &h in &[0.6, 0.7, 0.85] {
            let ms = MarginalSampler::new(Hurst::new(h).unwrap()).unwrap();
            assert!(
                (ms.total_variance() - 1.0).abs() < 1e-6,
                "H = {h}: {}",
                ms.total_variance()
            );
        }
    }

    #[test]
    fn sample_moments_match_the_cumulants() {
        let ms = MarginalSampler::new(Hurst::new(0.7).unwrap()).unwrap();
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        let n = 1_000_000;
        let z = ms.sample_marginal(&mut rng, n);

        let mean: f64 = z.iter().sum::<f64>() / n as f64;
        assert!(mean.abs() < 3.0 / (n as f64).sqrt() * 1.5, "mean {mean}");

        let var: f64 = z.iter().map(|v| v * v).sum::<f64>() / n as f64 - mean * mean;
        assert!((var - 1.0).abs() < 0.01, "variance {var}");

        // Skewness against the cubic-sum cumulant, with a batched MC error.
        let cubes: Vec<f64> = z.iter().map(|v| v * v * v).collect();
        let (m3, se3) = batch_se(&cubes, 50);
        let theory: f64 = 8.0 * ms.eigenvalues().iter().map(|l| l * l * l).sum::<f64>();
        assert!(
            (m3 - theory).abs() < 3.0 * se3,
            "third moment {m3} vs {theory} (se {se3})"
        );
    }

    #[test]
    fn empirical_characteristic_modulus_matches_the_product() {
        let ms = MarginalSampler::new(Hurst::new(0.7).unwrap()).unwrap();
        let spec = Spectrum::new(
            ms.eigenvalues().to_vec(),
            ms.eigenvalues().len(),
            None,
            0.0,
            ms.tail_variance(),
        )
        .unwrap();
        let target = char_modulus(&spec);

        let mut rng = ChaCha12Rng::seed_from_u64(29);
        let n = 1_000_000;
        let z = ms.sample_marginal(&mut rng, n);
        let cos: Vec<f64> = z.iter().map(|v| v.cos()).collect();
        let sin: Vec<f64> = z.iter().map(|v| v.sin()).collect();
        let (mc, se_c) = batch_se(&cos, 50);
        let (msn, se_s) = batch_se(&sin, 50);
        let modulus = (mc * mc + msn * msn).sqrt();
        let se = (se_c * se_c + se_s * se_s).sqrt();
        assert!(
            (modulus - target).abs() < 3.0 * se,
            "|ecf| {modulus} vs {target} (se {se})"
        );
    }
}
