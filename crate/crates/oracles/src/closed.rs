use statrs::function::gamma::ln_gamma;

use crate::PeakParams;

/// Closed form of the inverse-peak moment over the simplex-sphere product:
///
/// ```text
/// n (1 + avg gamma) * prod_j [ 2/(1+gamma_j) * Gamma(1 - H(1+gamma_j)) ]
///   / Gamma(n (1 - H(1+avg gamma)) + 1)
/// ```
///
/// assembled in log space so nearby-boundary exponents do not overflow.
pub fn peak_moment_closed_form(p: &PeakParams) -> f64 {
    let h = p.hurst();
    let n = p.n() as f64;
    let gav = p.gamma_av();
    let mut log = (n * (1.0 + gav)).ln();
    for &g in p.gammas() {
        log += (2.0 / (1.0 + g)).ln() + ln_gamma(1.0 - h * (1.0 + g));
    }
    log -= ln_gamma(n * (1.0 - h * (1.0 + gav)) + 1.0);
    log.exp()
}

/// Closed form of the weighted moment of the coordinate-wise maximum,
/// `\int_{R^n} exp(-max_j |y_j|) prod_j |y_j|^{gamma_j} dy`:
///
/// ```text
/// n (1 + avg gamma) * Gamma(n (1 + avg gamma)) * prod_j 2/(1+gamma_j)
/// ```
pub fn max_moment_closed_form(p: &PeakParams) -> f64 {
    let n = p.n() as f64;
    let gav = p.gamma_av();
    let mut log = (n * (1.0 + gav)).ln() + ln_gamma(n * (1.0 + gav));
    for &g in p.gammas() {
        log += (2.0 / (1.0 + g)).ln();
    }
    log.exp()
}

/// Proportionality constant between the inverse-peak moment and the
/// exponentially weighted integral over unconstrained coordinates:
///
/// ```text
/// C = 1 / ( Gamma(n (1 + avg gamma)) * Gamma(n (1 - H(1+avg gamma)) + 1) )
/// ```
///
/// so that the moment equals `C` times the exponential-weight integral.
pub fn exp_weighted_constant(p: &PeakParams) -> f64 {
    let h = p.hurst();
    let n = p.n() as f64;
    let gav = p.gamma_av();
    let log = -ln_gamma(n * (1.0 + gav)) - ln_gamma(n * (1.0 - h * (1.0 + gav)) + 1.0);
    log.exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_moment_reduces_to_a_rational_expression() {
        // n = 1 collapses to 2 / (1 - H(1+gamma)).
        let p = PeakParams::new(0.7, &[0.0]).unwrap();
        assert!((peak_moment_closed_form(&p) - 20.0 / 3.0).abs() < 1e-13);
        let p = PeakParams::new(0.5, &[0.0]).unwrap();
        assert!((peak_moment_closed_form(&p) - 4.0).abs() < 1e-14);
        let p = PeakParams::new(0.7, &[0.2]).unwrap();
        let expect = 2.0 / (1.0 - 0.7 * 1.2);
        assert!((peak_moment_closed_form(&p) - expect).abs() < 1e-12);
    }

    #[test]
    fn unweighted_max_moment_is_exact() {
        // gamma = 0: the integral is n * Gamma(n) * 2^n = n! * 2^n.
        let p = PeakParams::new(0.7, &[0.0]).unwrap();
        assert!((max_moment_closed_form(&p) - 2.0).abs() < 1e-14);
        let p = PeakParams::new(0.7, &[0.0, 0.0]).unwrap();
        assert!((max_moment_closed_form(&p) - 8.0).abs() < 1e-13);
        let p = PeakParams::new(0.6, &[0.0, 0.0, 0.0]).unwrap();
        assert!((max_moment_closed_form(&p) - 48.0).abs() < 1e-12);
    }

    #[test]
    fn constant_ties_the_two_closed_forms_together() {
        // moment = C * prod_j Gamma(1 - H(1+gamma_j)) * max moment.
        let p = PeakParams::new(0.6, &[0.2, 0.4]).unwrap();
        let mut expect = exp_weighted_constant(&p) * max_moment_closed_form(&p);
        for &g in p.gammas() {
            expect *= statrs::function::gamma::gamma(1.0 - p.hurst() * (1.0 + g));
        }
        assert!((peak_moment_closed_form(&p) / expect - 1.0).abs() < 1e-12);
    }
}
