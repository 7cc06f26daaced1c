//! Least-squares fits for power-law diagnostics.

use serde::{Deserialize, Serialize};

/// Result of a straight-line least-squares fit `y = slope * x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Standard error of the slope (residual-based; zero for perfect fits).
    pub slope_stderr: f64,
    /// Coefficient of determination.
    pub r_squared: f64,
}

/// Ordinary least squares on the given points. Panics on fewer than two
/// points or a degenerate abscissa.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> FitResult {
    assert_eq!(xs.len(), ys.len(), "fit inputs must pair up");
    let n = xs.len();
    assert!(n >= 2, "fit needs at least two points");
    let nf = n as f64;
    let mean_x = xs.iter().sum::<f64>() / nf;
    let mean_y = ys.iter().sum::<f64>() / nf;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for i in 0..n {
        let dx = xs[i] - mean_x;
        let dy = ys[i] - mean_y;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    assert!(sxx > 0.0, "fit abscissa is degenerate");
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res = (syy - slope * sxy).max(0.0);
    let slope_stderr = if n > 2 {
        (ss_res / (nf - 2.0) / sxx).sqrt()
    } else {
        0.0
    };
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    FitResult {
        slope,
        intercept,
        slope_stderr,
        r_squared,
    }
}

/// Least squares on `(ln x, ln y)`: fits `y = C * x^slope`. All inputs must
/// be strictly positive.
pub fn log_log_fit(xs: &[f64], ys: &[f64]) -> FitResult {
    let lx: Vec<f64> = xs
        .iter()
        .map(|&x| {
            assert!(x > 0.0, "log-log fit needs positive x (got {x})");
            x.ln()
        })
        .collect();
    let ly: Vec<f64> = ys
        .iter()
        .map(|&y| {
            assert!(y > 0.0, "log-log fit needs positive y (got {y})");
            y.ln()
        })
        .collect();
    linear_fit(&lx, &ly)
}
