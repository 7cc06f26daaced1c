//! Weighted time-frequency integrals of the characteristic modulus and
//! their scaling in the time horizon.
//!
//! For one time the integrand is |ξ|^η·|φ_{t,ξ}| over [0, U] × ℝ. For two
//! times the frequency plane is reduced to polar coordinates and the time
//! square to the ordered pair (t₁ = u·t₂, t₂); the operator spectrum is
//! computed per direction (u, θ) on the unit horizon and rescaled to t₂
//! exactly, so only low-dimensional quadratures remain.

use crate::product::modulus_scaled;
use crate::CharFnError;
use rosenlab_core::{fit::linear_fit, quad, Budget, Hurst, StepProfile};
use rosenlab_spectrum::{eig_spectral_domain, SpectralDomainOperator};
use serde::Serialize;
use std::f64::consts::PI;

/// Outcome of the horizon-scaling verification.
#[derive(Debug, Clone, Serialize)]
pub struct FourierBoundReport {
    pub n: usize,
    pub eta: f64,
    /// Horizons U·{1/2, 1, 2} the integral was evaluated at.
    pub horizons: Vec<f64>,
    pub values: Vec<f64>,
    /// Fitted d ln(value) / d ln(horizon).
    pub slope: f64,
    pub slope_stderr: f64,
    /// (1 − H(1+η))·n, the exponent the scaling should follow.
    pub predicted_slope: f64,
    pub operator_solves: usize,
}

struct Resolution {
    /// Window for the single solve behind the one-time integral.
    unit_radius: f64,
    unit_cells: usize,
    /// Window for the many per-direction solves of the two-time integral.
    radius: f64,
    cells: usize,
    theta_rule: usize,
    u_rule: usize,
    /// Geometric approach distances toward the cancellation direction.
    theta_layers: usize,
    node_cap: usize,
    rho_rel_tol: f64,
    rho_max_evals: usize,
}

impl Resolution {
    fn for_budget(budget: Budget) -> Self {
        match budget {
            Budget::Desk => Resolution {
                unit_radius: 60.0,
                unit_cells: 120,
                radius: 40.0,
                cells: 80,
                theta_rule: 6,
                u_rule: 4,
                theta_layers: 5,
                node_cap: 6_000,
                rho_rel_tol: 1e-4,
                rho_max_evals: 2_000,
            },
            Budget::Thorough => Resolution {
                unit_radius: 120.0,
                unit_cells: 240,
                radius: 60.0,
                cells: 120,
                theta_rule: 8,
                u_rule: 5,
                theta_layers: 6,
                node_cap: 40_000,
                rho_rel_tol: 1e-5,
                rho_max_evals: 4_000,
            },
        }
    }
}

/// Evaluates the weighted modulus integral at horizons U·{1/2, 1, 2} and
/// fits the scaling slope; the report carries both the fitted slope and
/// the exponent it should match.
pub fn verify_fourier_bound(
    hurst: Hurst,
    n: usize,
    eta: f64,
    u: f64,
    budget: Budget,
) -> Result<FourierBoundReport, CharFnError> {
    if n != 1 && n != 2 {
        return Err(CharFnError::InvalidParam {
            name: "n",
            value: n as f64,
            expected: "1 or 2",
        });
    }
    if !(eta >= 0.0) || eta >= hurst.holder_space_limit() {
        return Err(CharFnError::InvalidParam {
            name: "eta",
            value: eta,
            expected: "a value in [0, (1-H)/(2H))",
        });
    }
    if !(u > 0.0) || !u.is_finite() {
        return Err(CharFnError::InvalidParam {
            name: "u",
            value: u,
            expected: "a positive finite horizon",
        });
    }
    let horizons = vec![0.5 * u, u, 2.0 * u];
    let res = Resolution::for_budget(budget);
    let (values, operator_solves) = match n {
        1 => one_time_values(hurst, eta, &horizons, &res)?,
        _ => two_time_values(hurst, eta, &horizons, &res)?,
    };
    let log_h: Vec<f64> = horizons.iter().map(|x| x.ln()).collect();
    let log_v: Vec<f64> = values.iter().map(|x| x.ln()).collect();
    let fit = linear_fit(&log_h, &log_v);
    Ok(FourierBoundReport {
        n,
        eta,
        horizons,
        values,
        slope: fit.slope,
        slope_stderr: fit.slope_stderr,
        predicted_slope: (1.0 - hurst.get() * (1.0 + eta)) * n as f64,
        operator_solves,
    })
}

fn one_time_values(
    hurst: Hurst,
    eta: f64,
    horizons: &[f64],
    res: &Resolution,
) -> Result<(Vec<f64>, usize), CharFnError> {
    let op = SpectralDomainOperator::with_resolution(
        hurst,
        StepProfile::unit_at(1.0)?,
        res.unit_radius,
        res.unit_cells,
        2,
    )?;
    let spec = eig_spectral_domain(&op, 1.0)?;
    let (eigs, tail) = compress(spec.eigenvalues(), spec.tail_second_moment());
    // The frequency integral dies on the scale of the inverse standard
    // deviation; r_max covers it with a wide margin at every t.
    let sigma = (2.0 * spec.total_second_moment()).sqrt();
    let h = hurst.get();
    let inner = |t: f64| -> Result<f64, CharFnError> {
        let scale = t.powf(h);
        let xi_max = 80.0 / (sigma * scale);
        let result = quad::adaptive(
            |xi| eta_weight(xi, eta) * modulus_scaled(&eigs, tail, xi * scale),
            0.0,
            xi_max,
            0.0,
            1e-7,
            40_000,
        )
        .map_err(CharFnError::Core)?;
        Ok(2.0 * result.value)
    };
    let mut values = Vec::with_capacity(horizons.len());
    for &horizon in horizons {
        let mut failure = None;
        let outer = quad::adaptive(
            |t| {
                if t <= 0.0 {
                    return 0.0;
                }
                match inner(t) {
                    Ok(v) => v,
                    Err(e) => {
                        failure.get_or_insert(e);
                        0.0
                    }
                }
            },
            0.0,
            horizon,
            0.0,
            1e-6,
            20_000,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        values.push(outer.map_err(CharFnError::Core)?.value);
    }
    Ok((values, 1))
}

fn eta_weight(xi: f64, eta: f64) -> f64 {
    if eta == 0.0 {
        1.0
    } else {
        xi.abs().powf(eta)
    }
}

/// Drops eigenvalues below a relative floor into the quadratic tail term,
/// which represents them exactly to first order.
fn compress(eigenvalues: &[f64], tail: f64) -> (Vec<f64>, f64) {
    let max = eigenvalues.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
    let floor = 1e-3 * max;
    let mut kept = Vec::new();
    let mut extra = 0.0;
    for &l in eigenvalues {
        if l.abs() >= floor {
            kept.push(l);
        } else {
            extra += l * l;
        }
    }
    (kept, tail + extra)
}

struct DirectionNode {
    weight: f64,
    eigenvalues: Vec<f64>,
    tail: f64,
    variance: f64,
}

fn two_time_values(
    hurst: Hurst,
    eta: f64,
    horizons: &[f64],
    res: &Resolution,
) -> Result<(Vec<f64>, usize), CharFnError> {
    let h = hurst.get();
    let theta_panels = theta_panels(res.theta_layers);
    // Count direction nodes before solving anything.
    let mut planned = 0usize;
    let mut plan: Vec<(f64, f64)> = Vec::new();
    for &(a, b) in &theta_panels {
        let (thetas, weights) = quad::gauss_legendre_on(res.theta_rule, a, b);
        for (&theta, &w_theta) in thetas.iter().zip(&weights) {
            planned += u_panels(theta, h).len() * res.u_rule;
            plan.push((theta, w_theta));
        }
    }
    if planned > res.node_cap {
        return Err(CharFnError::BudgetExceeded {
            needed: planned,
            budget: res.node_cap,
        });
    }

    let mut nodes: Vec<DirectionNode> = Vec::with_capacity(planned);
    for &(theta, w_theta) in &plan {
        let angular = eta_weight((theta.cos() * theta.sin()).abs(), eta);
        if angular == 0.0 {
            continue;
        }
        for &(ua, ub) in &u_panels(theta, h) {
            let (us, wus) = quad::gauss_legendre_on(res.u_rule, ua, ub);
            for (&u, &w_u) in us.iter().zip(&wus) {
                let profile =
                    StepProfile::from_coefficients(vec![u, 1.0], vec![theta.cos(), theta.sin()])?;
                let op = SpectralDomainOperator::with_resolution(
                    hurst,
                    profile,
                    res.radius,
                    res.cells,
                    2,
                )?;
                let spec = eig_spectral_domain(&op, 1.0)?;
                let variance = 2.0 * spec.total_second_moment();
                let (eigenvalues, tail) = compress(spec.eigenvalues(), spec.tail_second_moment());
                nodes.push(DirectionNode {
                    weight: w_theta * w_u * angular,
                    eigenvalues,
                    tail,
                    variance,
                });
            }
        }
    }
    let solves = nodes.len();

    let mut values = Vec::with_capacity(horizons.len());
    for &horizon in horizons {
        let mut total = 0.0;
        for node in &nodes {
            total += node.weight * time_integral(node, h, eta, horizon, res)?;
        }
        values.push(4.0 * total);
    }
    Ok((values, solves))
}

/// ∫₀^U t₂ · R(t₂) dt₂ with R the radial modulus integral for the node's
/// spectrum scaled to time t₂, on log-graded panels toward t₂ = 0.
fn time_integral(
    node: &DirectionNode,
    h: f64,
    eta: f64,
    horizon: f64,
    res: &Resolution,
) -> Result<f64, CharFnError> {
    let mut total = 0.0;
    for level in 0..20 {
        let hi = horizon * 0.5f64.powi(level);
        let lo = hi * 0.5;
        let (ts, ws) = quad::gauss_legendre_on(3, lo, hi);
        for (&t, &w) in ts.iter().zip(&ws) {
            total += w * t * radial_integral(node, t.powf(h), eta, res)?;
        }
    }
    Ok(total)
}

/// ∫₀^∞ ρ^{1+2η} |φ(ρ · scale · ν)| dρ for a direction spectrum ν.
fn radial_integral(
    node: &DirectionNode,
    scale: f64,
    eta: f64,
    res: &Resolution,
) -> Result<f64, CharFnError> {
    let sigma = node.variance.sqrt() * scale;
    let rho_max = 80.0 / sigma;
    let result = quad::adaptive(
        |rho| {
            let weight = if eta == 0.0 { rho } else { rho * rho.powf(2.0 * eta) };
            weight * modulus_scaled(&node.eigenvalues, node.tail, rho * scale)
        },
        0.0,
        rho_max,
        0.0,
        res.rho_rel_tol,
        res.rho_max_evals,
    )
    .map_err(CharFnError::Core)?;
    Ok(result.value)
}

/// Angular panels graded geometrically toward the cancellation direction
/// 3π/4, where the two-time combination degenerates to an increment.
fn theta_panels(layers: usize) -> Vec<(f64, f64)> {
    let star = 0.75 * PI;
    let mut breaks = vec![0.0, 0.25 * PI, 0.5 * PI];
    let mut deltas: Vec<f64> = (0..layers).map(|i| 0.5 * 0.1f64.powi(i as i32)).collect();
    for &d in &deltas {
        breaks.push(star - d);
    }
    breaks.push(star);
    deltas.reverse();
    for &d in &deltas {
        breaks.push(star + d);
    }
    breaks.push(PI);
    breaks
        .windows(2)
        .filter(|w| w[1] > w[0] + 1e-12)
        .map(|w| (w[0], w[1]))
        .collect()
}

/// Inner-time panels graded toward u = 1, deep enough to resolve the
/// (1−u)^H boundary layer at this angle's distance from cancellation.
fn u_panels(theta: f64, h: f64) -> Vec<(f64, f64)> {
    let psi = (theta - 0.75 * PI).abs();
    // Below w = psi^{1/H} the integrand flattens; resolve two extra decades.
    let w_min = (psi.max(1e-8).powf(1.0 / h) * 1e-2).max(1e-12);
    let mut breaks = vec![0.0, 0.5];
    let mut w = 0.1;
    while w > w_min {
        breaks.push(1.0 - w);
        w *= 0.1;
    }
    breaks.push(1.0 - w_min.min(0.1));
    breaks.push(1.0);
    breaks
        .windows(2)
        .filter(|p| p[1] > p[0] + 1e-15)
        .map(|p| (p[0], p[1]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hurst(h: f64) -> Hurst {
        Hurst::new(h).unwrap()
    }

    #[test]
    fn rejects_bad_parameters() {
        let h = hurst(0.7);
        assert!(matches!(
            verify_fourier_bound(h, 3, 0.0, 1.0, Budget::Desk),
            Err(CharFnError::InvalidParam { .. })
        ));
        assert!(matches!(
            verify_fourier_bound(h, 1, 0.3, 1.0, Budget::Desk),
            Err(CharFnError::InvalidParam { .. })
        ));
        assert!(matches!(
            verify_fourier_bound(h, 1, 0.0, 0.0, Budget::Desk),
            Err(CharFnError::InvalidParam { .. })
        ));
    }

    #[test]
    fn one_time_scaling_matches_the_exponent() {
        let report = verify_fourier_bound(hurst(0.7), 1, 0.0, 1.0, Budget::Desk).unwrap();
        assert!(report.values.iter().all(|&v| v.is_finite() && v > 0.0));
        assert!(
            (report.slope - report.predicted_slope).abs() < 0.05,
            "slope {} vs {}",
            report.slope,
            report.predicted_slope
        );
    }

    #[test]
    fn one_time_weight_tilts_the_slope() {
        let report = verify_fourier_bound(hurst(0.7), 1, 0.1, 1.0, Budget::Desk).unwrap();
        assert!((report.predicted_slope - 0.23).abs() < 1e-12);
        assert!(
            (report.slope - report.predicted_slope).abs() < 0.05,
            "slope {} vs {}",
            report.slope,
            report.predicted_slope
        );
    }
}
