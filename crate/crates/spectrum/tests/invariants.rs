//! Cross-route consistency checks between the frequency-side and
//! time-side discretizations, and discretization-stability contracts.

use rosenlab_core::{Hurst, StepProfile};
use rosenlab_spectrum::{
    eig_spectral_domain, eig_time_domain, RieszKernelOperator, SpectralDomainOperator,
};

fn frequency_side_unit(h: f64, radius: f64, cells: usize) -> Vec<f64> {
    let op = SpectralDomainOperator::with_resolution(
        Hurst::new(h).unwrap(),
        StepProfile::unit_at(1.0).unwrap(),
        radius,
        cells,
        2,
    )
    .unwrap();
    eig_spectral_domain(&op, 1.0).unwrap().singular_values()
}

/// Aitken extrapolation from three values computed at geometrically
/// refined resolutions.
fn extrapolate(v0: f64, v1: f64, v2: f64) -> f64 {
    let (d1, d2) = (v1 - v0, v2 - v1);
    v2 + d2 / (d1 / d2 - 1.0)
}

#[test]
fn frequency_and_time_routes_agree_on_normalized_spectrum() {
    let h = 0.7;
    let windows = [120.0, 240.0, 480.0];
    let freq: Vec<Vec<f64>> = windows
        .iter()
        .map(|&x| frequency_side_unit(h, x, (2.0 * x) as usize))
        .collect();
    let profile = StepProfile::unit_at(1.0).unwrap();
    let time: Vec<Vec<f64>> = [400usize, 800, 1600]
        .iter()
        .map(|&n| {
            eig_time_domain(&profile, h / 2.0, n)
                .unwrap()
                .singular_values()
        })
        .collect();
    // Extrapolate each eigenvalue in the window size (frequency route)
    // and the node count (time route), then compare shapes through the
    // ratio to the leading eigenvalue.
    let freq_top: Vec<f64> = (0..20)
        .map(|k| extrapolate(freq[0][k], freq[1][k], freq[2][k]))
        .collect();
    let time_top: Vec<f64> = (0..20)
        .map(|k| extrapolate(time[0][k], time[1][k], time[2][k]))
        .collect();
    for k in 1..20 {
        let a = freq_top[k] / freq_top[0];
        let b = time_top[k] / time_top[0];
        assert!(
            (a - b).abs() / b < 1e-4,
            "k={k}: frequency {a} vs time {b}"
        );
    }
}

#[test]
fn time_route_is_stable_under_node_doubling() {
    let profile = StepProfile::from_levels(vec![0.6, 1.0], vec![1.0, 0.5]).unwrap();
    let coarse = eig_time_domain(&profile, 0.35, 1000).unwrap().singular_values();
    let fine = eig_time_domain(&profile, 0.35, 2000).unwrap().singular_values();
    for k in 0..10 {
        let rel = (coarse[k] - fine[k]).abs() / fine[k].abs();
        assert!(rel < 1e-4, "k={k}: relative change {rel}");
    }
}

#[test]
fn leading_eigenvalue_is_stable_to_four_digits() {
    let profile = StepProfile::unit_at(1.0).unwrap();
    let a = eig_time_domain(&profile, 0.35, 400).unwrap().singular_values()[0];
    let b = eig_time_domain(&profile, 0.35, 800).unwrap().singular_values()[0];
    assert!((a - b).abs() / b < 1e-4, "{a} vs {b}");
}

/// Cells accumulating toward both endpoints, where the eigenfunctions
/// of the convolution operator lose smoothness.
fn graded_cells(n: usize) -> Vec<(f64, f64)> {
    let map = |s: f64| 0.5 * (1.0 - (std::f64::consts::PI * s).cos());
    (0..n)
        .map(|i| (map(i as f64 / n as f64), map((i + 1) as f64 / n as f64)))
        .collect()
}

#[test]
fn galerkin_and_collocation_assemblies_agree() {
    let alpha = 0.35;
    let mut galerkin = Vec::new();
    let mut collocation = Vec::new();
    for &n in &[400usize, 800, 1600] {
        let op = RieszKernelOperator::from_cells(alpha, graded_cells(n)).unwrap();
        galerkin.push(op.eig().unwrap().singular_values());
        collocation.push(op.eig_nystrom().unwrap().singular_values());
    }
    for k in 0..20 {
        let a = extrapolate(galerkin[0][k], galerkin[1][k], galerkin[2][k]);
        let b = extrapolate(collocation[0][k], collocation[1][k], collocation[2][k]);
        assert!((a - b).abs() < 1e-6, "k={k}: {a} vs {b}");
    }
}
