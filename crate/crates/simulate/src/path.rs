//! Rosenblatt paths as normalized Hermite-rank-2 partial sums of fGn.

use crate::fgn::{fgn_autocovariance, FgnGenerator};
use crate::SimulateError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use rosenlab_core::{GeneratorKind, Hurst, PathSample};

/// Cap on fine-grid points per path (steps times internal factor).
pub const PATH_POINT_BUDGET: usize = 1 << 22;

/// Variance of Σ_{j≤n} (X_j² − 1) for unit-variance fGn: the Gaussian
/// fourth-moment identity gives 2 Σ_{|k|<n} (n−|k|) γ(k)² exactly.
fn hermite_sum_variance(hurst_prime: f64, n: usize) -> f64 {
    let mut acc = n as f64;
    for k in 1..n {
        let g = fgn_autocovariance(hurst_prime, k);
        acc += 2.0 * (n - k) as f64 * g * g;
    }
    2.0 * acc
}

fn checked_dimensions(
    n_steps: usize,
    horizon: f64,
    internal_factor: usize,
) -> Result<usize, SimulateError> {
    if n_steps == 0 {
        return Err(SimulateError::InvalidParam {
            name: "n_steps",
            value: 0.0,
            expected: "a positive step count",
        });
    }
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(SimulateError::InvalidParam {
            name: "horizon",
            value: horizon,
            expected: "a positive finite horizon",
        });
    }
    if internal_factor == 0 {
        return Err(SimulateError::InvalidParam {
            name: "internal_factor",
            value: 0.0,
            expected: "a positive refinement factor",
        });
    }
    let fine = n_steps
        .checked_mul(internal_factor)
        .unwrap_or(usize::MAX);
    if fine > PATH_POINT_BUDGET {
        return Err(SimulateError::BudgetExceeded {
            needed: fine,
            budget: PATH_POINT_BUDGET,
        });
    }
    Ok(fine)
}

fn accumulate_path(
    hurst: Hurst,
    n_steps: usize,
    horizon: f64,
    internal_factor: usize,
    scale: f64,
    fine_noise: &[f64],
    seed: u64,
) -> PathSample {
    let mut values = Vec::with_capacity(n_steps + 1);
    values.push(0.0);
    let mut acc = 0.0;
    for (j, &x) in fine_noise.iter().enumerate() {
        acc += x * x - 1.0;
        if (j + 1) % internal_factor == 0 {
            values.push(scale * acc);
        }
    }
    PathSample::new(
        hurst,
        horizon / n_steps as f64,
        values,
        seed,
        GeneratorKind::Hermite2Fgn,
    )
    .expect("accumulated path satisfies the sample invariants")
}

/// One path of Z over [0, T] on `n_steps` grid points, synthesized from
/// `n_steps * internal_factor` fGn points at H' = (H+1)/2. The partial
/// sums are scaled so that Var Z_T = T^{2H} holds exactly in law. The
/// caller RNG supplies one seed; the recorded seed regenerates the path.
pub fn sample_path(
    hurst: Hurst,
    n_steps: usize,
    horizon: f64,
    rng: &mut impl Rng,
    internal_factor: usize,
) -> Result<PathSample, SimulateError> {
    let fine = checked_dimensions(n_steps, horizon, internal_factor)?;
    let hp = 0.5 * (hurst.get() + 1.0);
    let gen = FgnGenerator::new(hp, fine)?;
    let scale = horizon.powf(hurst.get()) / hermite_sum_variance(hp, fine).sqrt();
    let seed = rng.next_u64();
    let noise = gen.sample(&mut ChaCha12Rng::seed_from_u64(seed));
    Ok(accumulate_path(
        hurst,
        n_steps,
        horizon,
        internal_factor,
        scale,
        &noise,
        seed,
    ))
}

/// Independent paths in parallel, one RNG stream per path; the circulant
/// table is computed once and shared read-only. Each sample records its
/// stream index as the per-path seed.
pub fn sample_paths(
    hurst: Hurst,
    n_steps: usize,
    horizon: f64,
    seed: u64,
    internal_factor: usize,
    n_paths: usize,
) -> Result<Vec<PathSample>, SimulateError> {
    let fine = checked_dimensions(n_steps, horizon, internal_factor)?;
    if n_paths == 0 {
        return Err(SimulateError::InvalidParam {
            name: "n_paths",
            value: 0.0,
            expected: "a positive path count",
        });
    }
    let hp = 0.5 * (hurst.get() + 1.0);
    let gen = FgnGenerator::new(hp, fine)?;
    let scale = horizon.powf(hurst.get()) / hermite_sum_variance(hp, fine).sqrt();
    Ok((0..n_paths as u64)
        .into_par_iter()
        .map(|stream| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            let noise = gen.sample(&mut rng);
            accumulate_path(
                hurst,
                n_steps,
                horizon,
                internal_factor,
                scale,
                &noise,
                stream,
            )
        })
        .collect())
}
