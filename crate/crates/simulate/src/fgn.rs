//! Exact-covariance fractional Gaussian noise by circulant embedding.

use crate::SimulateError;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use rustfft::{Fft, FftPlanner};
use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

/// Autocovariance of unit-variance fractional Gaussian noise at integer
/// lags, γ(k) = ½(|k+1|^{2H'} − 2|k|^{2H'} + |k−1|^{2H'}).
///
/// For large lags the naive second difference cancels catastrophically;
/// past lag 100 the binomial series of (1+x)^a + (1−x)^a − 2 in x = 1/k
/// is exact to machine precision.
pub fn fgn_autocovariance(hurst_prime: f64, lag: usize) -> f64 {
    let a = 2.0 * hurst_prime;
    let k = lag as f64;
    if lag == 0 {
        return 1.0;
    }
    if lag < 100 {
        return 0.5 * ((k + 1.0).powf(a) - 2.0 * k.powf(a) + (k - 1.0).powf(a));
    }
    let x2 = 1.0 / (k * k);
    let c2 = a * (a - 1.0) / 2.0;
    let c4 = c2 * (a - 2.0) * (a - 3.0) / 12.0;
    let c6 = c4 * (a - 4.0) * (a - 5.0) / 30.0;
    k.powf(a) * x2 * (c2 + x2 * (c4 + x2 * c6))
}

/// Stationary Gaussian sampler with the fGn covariance, H' in (3/4, 1),
/// built on the circulant embedding of the covariance into length 2N.
pub struct FgnGenerator {
    hurst_prime: f64,
    n: usize,
    /// sqrt(eigenvalue / 2N) per circulant mode, ready for synthesis.
    scale: Vec<f64>,
    fft: Arc<dyn Fft<f64>>,
}

impl FgnGenerator {
    pub fn new(hurst_prime: f64, n: usize) -> Result<Self, SimulateError> {
        if !(hurst_prime > 0.75 && hurst_prime < 1.0) {
            return Err(SimulateError::InvalidParam {
                name: "hurst_prime",
                value: hurst_prime,
                expected: "the open interval (3/4, 1)",
            });
        }
        if n < 2 {
            return Err(SimulateError::InvalidParam {
                name: "grid_size",
                value: n as f64,
                expected: "at least 2 grid points",
            });
        }
        let m = 2 * n;
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(m);
        let mut buf: Vec<Complex64> = (0..m)
            .map(|j| Complex64::new(fgn_autocovariance(hurst_prime, j.min(m - j)), 0.0))
            .collect();
        fft.process(&mut buf);
        let eigs: Vec<f64> = buf.iter().map(|z| z.re).collect();
        let max = eigs.iter().fold(0.0f64, |a, &b| a.max(b));
        let min = eigs.iter().fold(f64::INFINITY, |a, &b| a.min(b));
        if min < -1e-10 * max {
            return Err(SimulateError::Embedding { min, max });
        }
        let scale = eigs
            .iter()
            .map(|&l| (l.max(0.0) / m as f64).sqrt())
            .collect();
        Ok(Self {
            hurst_prime,
            n,
            scale,
            fft,
        })
    }

    pub fn hurst_prime(&self) -> f64 {
        self.hurst_prime
    }

    pub fn grid_size(&self) -> usize {
        self.n
    }

    /// One stationary vector of length N with covariance γ(|i−j|).
    pub fn sample(&self, rng: &mut impl Rng) -> Vec<f64> {
        let n = self.n;
        let m = 2 * n;
        let mut buf = vec![Complex64::new(0.0, 0.0); m];
        let g0: f64 = rng.sample(StandardNormal);
        let gn: f64 = rng.sample(StandardNormal);
        buf[0] = Complex64::new(self.scale[0] * g0, 0.0);
        buf[n] = Complex64::new(self.scale[n] * gn, 0.0);
        for k in 1..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = Complex64::new(re, im) * (FRAC_1_SQRT_2 * self.scale[k]);
            buf[k] = z;
            buf[m - k] = z.conj();
        }
        self.fft.process(&mut buf);
        buf[..n].iter().map(|z| z.re).collect()
    }
}
