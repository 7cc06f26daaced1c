//! Distribution-level agreement between the path synthesizer and the
//! spectral marginal sampler, and the law invariances of the paths.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rosenlab_core::Hurst;
use rosenlab_simulate::{sample_paths, MarginalSampler};

/// Two-sample Kolmogorov-Smirnov statistic; 1% critical value is
/// 1.6276 sqrt((n+m)/(nm)) in the independent-sample regime.
fn two_sample_ks(a: &mut [f64], b: &mut [f64]) -> f64 {
    a.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < n && j < m {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    d
}

const KS_COEFF_1PCT: f64 = 1.6276;

#[test]
fn path_endpoints_match_the_marginal_law() {
    let hurst = Hurst::new(0.7).unwrap();
    let n = 10_000;
    let ms = MarginalSampler::new(hurst).unwrap();
    let mut rng = ChaCha12Rng::seed_from_u64(314);
    let mut reference = ms.sample_marginal(&mut rng, n);

    let paths = sample_paths(hurst, 256, 1.0, 21, 64, n).unwrap();
    let mut ends: Vec<f64> = paths.iter().map(|p| *p.values().last().unwrap()).collect();

    let d = two_sample_ks(&mut ends, &mut reference);
    let critical = KS_COEFF_1PCT * (2.0 / n as f64).sqrt();
    assert!(d < critical, "KS {d} vs critical {critical}");
}

#[test]
fn increments_are_stationary_in_law() {
    let hurst = Hurst::new(0.7).unwrap();
    let n = 5_000;
    // Independent ensembles so the two-sample critical value applies.
    let early_paths = sample_paths(hurst, 256, 1.0, 51, 16, n).unwrap();
    let late_paths = sample_paths(hurst, 256, 1.0, 52, 16, n).unwrap();
    let mut early: Vec<f64> = early_paths
        .iter()
        .map(|p| p.values()[96] - p.values()[64])
        .collect();
    let mut late: Vec<f64> = late_paths
        .iter()
        .map(|p| p.values()[224] - p.values()[192])
        .collect();
    let d = two_sample_ks(&mut early, &mut late);
    let critical = KS_COEFF_1PCT * (2.0 / n as f64).sqrt();
    assert!(d < critical, "KS {d} vs critical {critical}");
}

#[test]
fn variance_curves_are_self_similar() {
    let hurst = Hurst::new(0.7).unwrap();
    let n_paths = 80_000;
    let n_steps = 64;
    let paths = sample_paths(hurst, n_steps, 1.0, 777, 16, n_paths).unwrap();
    let var_at = |idx: usize| -> f64 {
        paths
            .iter()
            .map(|p| p.values()[idx] * p.values()[idx])
            .sum::<f64>()
            / n_paths as f64
    };
    for c in [0.5f64, 2.0] {
        for i in (16..=n_steps).step_by(4) {
            let j = (i as f64 * c) as usize;
            if j < 8 || j > n_steps {
                continue;
            }
            let ratio = var_at(j) / (c.powf(2.0 * hurst.get()) * var_at(i));
            assert!(
                (ratio - 1.0).abs() < 0.05,
                "c={c} t={}: ratio {ratio}",
                i as f64 / n_steps as f64
            );
        }
    }
}
