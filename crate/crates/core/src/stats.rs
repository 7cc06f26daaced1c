//! Sample statistics used by the Monte Carlo verification layers.

/// Sample mean.
pub fn mean(xs: &[f64]) -> f64 {
    assert!(!xs.is_empty());
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Unbiased sample variance.
pub fn variance(xs: &[f64]) -> f64 {
    assert!(xs.len() >= 2);
    let m = mean(xs);
    xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() as f64 - 1.0)
}

/// Standard error of the sample mean.
pub fn mean_stderr(xs: &[f64]) -> f64 {
    (variance(xs) / xs.len() as f64).sqrt()
}

/// Sample skewness (third standardized moment, biased form).
pub fn skewness(xs: &[f64]) -> f64 {
    let m = mean(xs);
    let n = xs.len() as f64;
    let m2 = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / n;
    let m3 = xs.iter().map(|x| (x - m).powi(3)).sum::<f64>() / n;
    m3 / m2.powf(1.5)
}

/// Standard error of the skewness under approximate normality, `sqrt(6/n)`.
pub fn skewness_stderr(n: usize) -> f64 {
    (6.0 / n as f64).sqrt()
}

/// Empirical characteristic-function modulus `|mean(exp(i theta X))|` and the
/// standard error of that modulus estimate.
pub fn ecf_modulus(xs: &[f64], theta: f64) -> (f64, f64) {
    let n = xs.len() as f64;
    let mut re = 0.0;
    let mut im = 0.0;
    for &x in xs {
        let (s, c) = (theta * x).sin_cos();
        re += c;
        im += s;
    }
    re /= n;
    im /= n;
    let modulus = (re * re + im * im).sqrt();
    // Delta method on (mean cos, mean sin); each component has variance at
    // most 1/(4 n) around the truth, and the modulus is 1-Lipschitz in each.
    let mut var_re = 0.0;
    let mut var_im = 0.0;
    for &x in xs {
        let (s, c) = (theta * x).sin_cos();
        var_re += (c - re) * (c - re);
        var_im += (s - im) * (s - im);
    }
    var_re /= n * (n - 1.0);
    var_im /= n * (n - 1.0);
    let denom = modulus.max(1e-300);
    let se = ((re / denom).powi(2) * var_re + (im / denom).powi(2) * var_im).sqrt();
    (modulus, se)
}

/// Two-sample Kolmogorov-Smirnov statistic `sup |F_a - F_b|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    assert!(!a.is_empty() && !b.is_empty());
    let mut sa = a.to_vec();
    let mut sb = b.to_vec();
    sa.sort_by(|x, y| x.partial_cmp(y).expect("finite samples"));
    sb.sort_by(|x, y| x.partial_cmp(y).expect("finite samples"));
    let (na, nb) = (sa.len() as f64, sb.len() as f64);
    let mut i = 0usize;
    let mut j = 0usize;
    let mut d = 0.0f64;
    while i < sa.len() && j < sb.len() {
        let x = sa[i].min(sb[j]);
        while i < sa.len() && sa[i] <= x {
            i += 1;
        }
        while j < sb.len() && sb[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// Large-sample two-sample KS critical value at significance `alpha`:
/// `c(alpha) * sqrt((n + m) / (n m))` with `c(alpha) = sqrt(-ln(alpha/2)/2)`.
pub fn ks_critical(alpha: f64, n: usize, m: usize) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0);
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand_distr::{Distribution, StandardNormal};

    #[test]
    fn moments_of_a_simple_sample() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_relative_eq!(mean(&xs), 2.5);
        assert_relative_eq!(variance(&xs), 5.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(skewness(&xs), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn ecf_modulus_of_a_point_mass_is_one() {
        let xs = vec![2.0; 100];
        let (m, se) = ecf_modulus(&xs, 1.7);
        assert_relative_eq!(m, 1.0, max_relative = 1e-12);
        assert!(se < 1e-12);
    }

    #[test]
    fn ecf_matches_gaussian_closed_form() {
        let mut rng = crate::rng::make_rng_stream(2024, 0);
        let xs: Vec<f64> = (0..200_000)
            .map(|_| StandardNormal.sample(&mut rng))
            .collect();
        let theta = 1.3;
        let (m, se) = ecf_modulus(&xs, theta);
        let expect = (-theta * theta / 2.0f64).exp();
        assert!(
            (m - expect).abs() < 4.0 * se.max(1e-4),
            "modulus {m} vs {expect} (se {se})"
        );
    }

    #[test]
    fn ks_statistic_detects_identical_and_shifted_samples() {
        let a: Vec<f64> = (0..1000).map(|i| i as f64 / 1000.0).collect();
        assert!(ks_two_sample(&a, &a) < 1e-12);
        let b: Vec<f64> = a.iter().map(|x| x + 0.5).collect();
        assert!(ks_two_sample(&a, &b) > 0.45);
    }

    #[test]
    fn ks_accepts_same_distribution_at_one_percent() {
        let mut rng = crate::rng::make_rng_stream(7, 0);
        let a: Vec<f64> = (0..20_000).map(|_| rng.random::<f64>()).collect();
        let b: Vec<f64> = (0..20_000).map(|_| rng.random::<f64>()).collect();
        let d = ks_two_sample(&a, &b);
        let crit = ks_critical(0.01, a.len(), b.len());
        assert!(d < crit, "d = {d}, critical = {crit}");
    }

    #[test]
    fn ks_critical_value_formula() {
        // c(0.01) = sqrt(-ln(0.005)/2)
        let crit = ks_critical(0.01, 1000, 1000);
        let c = (-(0.005f64).ln() / 2.0).sqrt();
        assert_relative_eq!(crit, c * (2.0f64 / 1000.0).sqrt(), max_relative = 1e-12);
    }
}
