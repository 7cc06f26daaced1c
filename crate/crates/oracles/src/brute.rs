use std::f64::consts::FRAC_PI_2;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use rosenlab_core::{quad, Budget};
use serde::Serialize;

use crate::{OracleError, PeakParams};

/// A value with an attached error bound: the quadrature error estimate in
/// one and two dimensions, one standard error of the block means for the
/// quasi-Monte Carlo evaluation in three.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

impl Estimate {
    /// Relative distance to a reference value.
    pub fn rel_err(&self, reference: f64) -> f64 {
        ((self.value - reference) / reference).abs()
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct EffortCaps {
    pub(crate) circle_rel_tol: f64,
    pub(crate) circle_max_evals: usize,
    pub(crate) sphere_points: usize,
}

impl EffortCaps {
    pub(crate) fn for_budget(budget: Budget) -> Self {
        match budget {
            Budget::Desk => Self {
                circle_rel_tol: 1e-9,
                circle_max_evals: 30_000,
                sphere_points: 1 << 16,
            },
            Budget::Thorough => Self {
                circle_rel_tol: 1e-11,
                circle_max_evals: 120_000,
                sphere_points: 1 << 19,
            },
        }
    }
}

/// Evaluates the inverse-peak moment without touching its closed form.
///
/// The simplex integral is resolved exactly for every fixed direction by a
/// sub-level-set decomposition (see [`level_integral`]), so only the sphere
/// integral is numerical: two point masses in one dimension (exact), an
/// adaptive quadrature over the quarter circle in two, and a randomized
/// Halton rule with endpoint-stretched angles over the octant in three.
/// Dimensions above three are not supported.
pub fn peak_moment_brute_force(p: &PeakParams, budget: Budget) -> Result<Estimate, OracleError> {
    brute_with_caps(p, EffortCaps::for_budget(budget))
}

pub(crate) fn brute_with_caps(p: &PeakParams, caps: EffortCaps) -> Result<Estimate, OracleError> {
    match p.n() {
        1 => {
            // S^0 is two unit points; the simplex factor is exact.
            let value = 2.0 * level_integral(&[1.0], p.hurst(), p.moment_order());
            Ok(Estimate {
                value,
                error: value * f64::EPSILON,
            })
        }
        2 => brute_circle(p, caps),
        3 => Ok(brute_sphere(p, caps)),
        n => Err(OracleError::Unsupported {
            what: "brute-force evaluation",
            n,
            max: 3,
        }),
    }
}

/// Simplex factor of the moment for a fixed direction `w`:
///
/// ```text
/// J(w) = \int_{Delta_n} (max_j t_j^H |w_j|)^{-q} dt
///      = q \int_0^inf m^{-q-1} vol{ t in Delta_n : t_j^H |w_j| < m } dm
/// ```
///
/// Substituting `m = mu^H` turns every box constraint into `t_j < mu c_j`
/// with slope `c_j = |w_j|^{-1/H}`, so the sub-level volume is a piecewise
/// polynomial in `mu` whose panels integrate in closed form against
/// `mu^{-Hq-1}`. The result is exact up to rounding; the integrable
/// singularity at the origin sits entirely in the first panel, a pure
/// power handled analytically.
fn level_integral(w: &[f64], hurst: f64, order: f64) -> f64 {
    let n = w.len();
    let hq = hurst * order;
    let factorial = [1.0, 1.0, 2.0, 6.0][n];
    let c: Vec<f64> = w.iter().map(|&x| x.abs().powf(-1.0 / hurst)).collect();
    let mu_star = w
        .iter()
        .fold(0.0, |m: f64, &x| m.max(x.abs()))
        .powf(1.0 / hurst);

    // Panel edges: heights where a subset of box constraints meets the
    // simplex face, i.e. mu * sum_{j in S} c_j = 1.
    let mut edges: Vec<f64> = Vec::with_capacity(1 << n);
    for mask in 1u32..(1 << n) {
        let a: f64 = (0..n).filter(|j| mask >> j & 1 == 1).map(|j| c[j]).sum();
        if a.is_finite() {
            let edge = 1.0 / a;
            if edge > 0.0 && edge < mu_star {
                edges.push(edge);
            }
        }
    }
    edges.push(mu_star);
    edges.sort_by(|x, y| x.partial_cmp(y).unwrap());
    edges.dedup();

    let mut total = 0.0;
    let mut lo = 0.0;
    for &hi in &edges {
        let coeffs = panel_coefficients(&c, n, 0.5 * (lo + hi), factorial);
        for (j, &b) in coeffs.iter().enumerate().take(n + 1) {
            if b != 0.0 {
                total += b * power_bracket(j as f64 - hq, lo, hi);
            }
        }
        lo = hi;
    }
    // Above mu_star the box covers the whole simplex and the tail is exact.
    order * hurst * total + mu_star.powf(-hq) / factorial
}

/// `\int_lo^hi mu^{e-1} dmu` with a logarithmic branch for vanishing `e`.
fn power_bracket(e: f64, lo: f64, hi: f64) -> f64 {
    if e.abs() < 1e-9 {
        return (hi / lo).ln();
    }
    let lo_pow = if lo == 0.0 {
        if e > 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        lo.powf(e)
    };
    (hi.powf(e) - lo_pow) / e
}

/// Coefficients of the sub-level volume polynomial on one panel, indexed by
/// the power of `mu`. Whenever the active box fits inside the simplex the
/// cancellation-free product forms are used; otherwise the alternating
/// subset expansion is safe because its terms are comparable in size.
fn panel_coefficients(c: &[f64], n: usize, mid: f64, factorial: f64) -> [f64; 4] {
    let active: Vec<f64> = c.iter().copied().filter(|&cj| cj * mid < 1.0).collect();
    let k = active.len();
    let sum_active: f64 = active.iter().sum();
    let mut coeffs = [0.0; 4];
    if sum_active * mid < 1.0 {
        match (n, k) {
            (_, 0) => coeffs[0] = 1.0 / factorial,
            (n2, k2) if n2 == k2 => coeffs[n] = active.iter().product(),
            (2, 1) => {
                coeffs[1] = active[0];
                coeffs[2] = -active[0] * active[0] / 2.0;
            }
            (3, 1) => {
                let cj = active[0];
                coeffs[1] = cj / 2.0;
                coeffs[2] = -cj * cj / 2.0;
                coeffs[3] = cj * cj * cj / 6.0;
            }
            (3, 2) => {
                let prod = active[0] * active[1];
                coeffs[2] = prod;
                coeffs[3] = -prod * (active[0] + active[1]) / 2.0;
            }
            _ => unreachable!("n <= 3 and k <= n"),
        }
    } else {
        let binom: [f64; 4] = match n {
            1 => [1.0, 1.0, 0.0, 0.0],
            2 => [1.0, 2.0, 1.0, 0.0],
            _ => [1.0, 3.0, 3.0, 1.0],
        };
        for mask in 0u32..(1 << k) {
            let a: f64 = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| active[i])
                .sum();
            if a * mid >= 1.0 {
                continue;
            }
            let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            let mut apow = 1.0;
            for (j, &b) in binom.iter().enumerate().take(n + 1) {
                let term = sign * b * apow / factorial;
                coeffs[j] += if j % 2 == 0 { term } else { -term };
                apow *= a;
            }
        }
    }
    coeffs
}

/// Volume of `{t >= 0, sum t <= 1, t_j < rho_j}`; the pointwise counterpart
/// of [`panel_coefficients`], used to cross-check the panel algebra.
#[cfg(test)]
fn truncated_simplex_volume(rho: &[f64]) -> f64 {
    let n = rho.len();
    let factorial = [1.0, 1.0, 2.0, 6.0][n];
    let active: Vec<f64> = rho.iter().copied().filter(|&r| r < 1.0).collect();
    let k = active.len();
    let s: f64 = active.iter().sum();
    if s <= 1.0 {
        match (n, k) {
            (_, 0) => 1.0 / factorial,
            (n2, k2) if n2 == k2 => active.iter().product(),
            (2, 1) => active[0] * (1.0 - active[0] / 2.0),
            (3, 1) => {
                let r = active[0];
                r * (3.0 - 3.0 * r + r * r) / 6.0
            }
            (3, 2) => active[0] * active[1] * (1.0 - (active[0] + active[1]) / 2.0),
            _ => unreachable!("n <= 3 and k <= n"),
        }
    } else {
        let mut vol = 0.0;
        for mask in 0u32..(1 << k) {
            let a: f64 = (0..k)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| active[i])
                .sum();
            let rest = 1.0 - a;
            if rest <= 0.0 {
                continue;
            }
            let sign = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
            vol += sign * rest.powi(n as i32) / factorial;
        }
        vol
    }
}

fn brute_circle(p: &PeakParams, caps: EffortCaps) -> Result<Estimate, OracleError> {
    let h = p.hurst();
    let q = p.moment_order();
    let (g1, g2) = (p.gammas()[0], p.gammas()[1]);
    let f = |theta: f64| {
        let (s, c) = theta.sin_cos();
        c.powf(g1) * s.powf(g2) * level_integral(&[c, s], h, q)
    };
    let r = quad::adaptive(f, 0.0, FRAC_PI_2, 0.0, caps.circle_rel_tol, caps.circle_max_evals)
        .map_err(OracleError::from_core)?;
    let value = 4.0 * r.value;
    Ok(Estimate {
        value,
        error: (4.0 * r.abs_error).max(value.abs() * 1e-13),
    })
}

const QMC_SEED: u64 = 0x524f_5345_4e4c_4142;
const QMC_BLOCKS: usize = 8;

fn brute_sphere(p: &PeakParams, caps: EffortCaps) -> Estimate {
    let h = p.hurst();
    let q = p.moment_order();
    let g = [p.gammas()[0], p.gammas()[1], p.gammas()[2]];
    let block_means: Vec<f64> = (0..QMC_BLOCKS as u64)
        .into_par_iter()
        .map(|block| {
            let mut rng = ChaCha12Rng::seed_from_u64(QMC_SEED.wrapping_add(block));
            let shift1: f64 = rng.random();
            let shift2: f64 = rng.random();
            let mut acc = 0.0;
            for i in 0..caps.sphere_points {
                let x1 = fract_shift(radical_inverse_base2(i as u64), shift1);
                let x2 = fract_shift(radical_inverse_base3(i as u64), shift2);
                acc += octant_sample(x1, x2, h, q, &g);
            }
            acc / caps.sphere_points as f64
        })
        .collect();
    let mean = block_means.iter().sum::<f64>() / QMC_BLOCKS as f64;
    let var = block_means
        .iter()
        .map(|m| (m - mean) * (m - mean))
        .sum::<f64>()
        / (QMC_BLOCKS - 1) as f64;
    Estimate {
        value: mean,
        error: (var / QMC_BLOCKS as f64).sqrt(),
    }
}

/// One integrand sample on the positive octant, in stretched coordinates.
/// The factor 8 accounts for the sign symmetry of the weights.
fn octant_sample(x1: f64, x2: f64, h: f64, q: f64, g: &[f64; 3]) -> f64 {
    let (theta, dtheta) = endpoint_stretch(x1, FRAC_PI_2);
    let (phi, dphi) = endpoint_stretch(x2, FRAC_PI_2);
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let w = [st * cp, st * sp, ct];
    let weight = w[0].powf(g[0]) * w[1].powf(g[1]) * w[2].powf(g[2]);
    8.0 * st * dtheta * dphi * weight * level_integral(&w, h, q)
}

const STRETCH: f64 = 4.0;

/// Maps `[0, 1]` onto `[0, length]` with a power compression toward both
/// endpoints, returning the image and the Jacobian. The integrand diverges
/// on the coordinate circles of the sphere (polar axis and equator of the
/// parameterization); concentrating samples there keeps the variance of
/// the randomized estimate finite.
fn endpoint_stretch(x: f64, length: f64) -> (f64, f64) {
    let x = x.clamp(1e-12, 1.0 - 1e-12);
    let half = 0.5 * length;
    if x <= 0.5 {
        let u = 2.0 * x;
        let up = u.powf(STRETCH);
        (half * up, length * STRETCH * up / u)
    } else {
        let u = 2.0 * (1.0 - x);
        let up = u.powf(STRETCH);
        (length - half * up, length * STRETCH * up / u)
    }
}

/// Van der Corput sequence in base 2 (53-bit precision).
fn radical_inverse_base2(i: u64) -> f64 {
    (i.reverse_bits() >> 11) as f64 / (1u64 << 53) as f64
}

/// Van der Corput sequence in base 3.
fn radical_inverse_base3(mut i: u64) -> f64 {
    let mut inv = 0.0;
    let mut scale = 1.0 / 3.0;
    while i > 0 {
        inv += (i % 3) as f64 * scale;
        scale /= 3.0;
        i /= 3;
    }
    inv
}

/// Cranley-Patterson rotation: adds a uniform shift modulo one.
fn fract_shift(x: f64, shift: f64) -> f64 {
    let y = x + shift;
    y - y.floor()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_volumes_match_hand_calculations() {
        // Box inside the simplex: plain product.
        assert!((truncated_simplex_volume(&[0.2, 0.3, 0.4]) - 0.024).abs() < 1e-15);
        // Symmetric clipped corner in three dimensions.
        let vol = truncated_simplex_volume(&[0.5, 0.5, 0.5]);
        assert!((vol - 0.625 / 6.0).abs() < 1e-15);
        // Two constraints, one corner clipped: 0.35 - 0.2^2/2.
        assert!((truncated_simplex_volume(&[0.5, 0.7]) - 0.33).abs() < 1e-15);
        // Spent constraints drop out.
        let vol = truncated_simplex_volume(&[0.3, 2.0, 5.0]);
        assert!((vol - 0.3 * (3.0 - 0.9 + 0.09) / 6.0).abs() < 1e-15);
        // No active constraint: the full simplex.
        assert!((truncated_simplex_volume(&[2.0, 2.0]) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn panel_coefficients_reproduce_the_pointwise_volume() {
        let c = [3.0, 0.8, 1.7];
        for &mu in &[0.05, 0.2, 0.31, 0.5, 0.9, 1.1] {
            let coeffs = panel_coefficients(&c, 3, mu, 6.0);
            let poly: f64 = coeffs
                .iter()
                .enumerate()
                .map(|(j, &b)| b * mu.powi(j as i32))
                .sum();
            let direct = truncated_simplex_volume(&[c[0] * mu, c[1] * mu, c[2] * mu]);
            assert!(
                (poly - direct).abs() < 1e-14,
                "mu = {mu}: {poly} vs {direct}"
            );
        }
    }

    #[test]
    fn level_integral_matches_an_adaptive_reference() {
        let (h, q) = (0.7f64, 2.4f64);
        let w = [0.3f64, 1.2, 0.7];
        let hq = h * q;
        let c: Vec<f64> = w.iter().map(|&x| x.powf(-1.0 / h)).collect();
        let mu_star = 1.2f64.powf(1.0 / h);
        let mu_first = 1.0 / c.iter().sum::<f64>();
        // First panel analytically, the rest by quadrature on the stable
        // pointwise volume, plus the exact tail.
        let prod_c: f64 = c.iter().product();
        let head = prod_c * mu_first.powf(3.0 - hq) / (3.0 - hq);
        let body = quad::adaptive(
            |mu| {
                mu.powf(-hq - 1.0)
                    * truncated_simplex_volume(&[c[0] * mu, c[1] * mu, c[2] * mu])
            },
            mu_first,
            mu_star,
            0.0,
            1e-12,
            200_000,
        )
        .unwrap();
        let reference = q * h * (head + body.value) + mu_star.powf(-hq) / 6.0;
        let exact = level_integral(&w, h, q);
        assert!(
            (exact / reference - 1.0).abs() < 1e-10,
            "{exact} vs {reference}"
        );
    }

    #[test]
    fn one_dimensional_case_is_a_rational_value() {
        for &(h, g) in &[(0.55, 0.0), (0.7, 0.2), (0.85, 0.1)] {
            let q = 1.0 + g;
            let value = 2.0 * level_integral(&[1.0], h, q);
            let expect = 2.0 / (1.0 - h * q);
            assert!((value / expect - 1.0).abs() < 1e-14, "H = {h}, gamma = {g}");
        }
    }

    #[test]
    fn stretched_octant_map_preserves_total_area() {
        // Integrating the Jacobian against sin(theta) over the unit square
        // must give the sphere area 4 pi regardless of the stretch. The map
        // folds at 1/2, so the rule is split there.
        let (mut nodes, mut weights) = quad::gauss_legendre_on(48, 0.0, 0.5);
        let (upper_n, upper_w) = quad::gauss_legendre_on(48, 0.5, 1.0);
        nodes.extend(upper_n);
        weights.extend(upper_w);
        let mut area = 0.0;
        for (&x1, &w1) in nodes.iter().zip(&weights) {
            let (theta, dtheta) = endpoint_stretch(x1, FRAC_PI_2);
            for (&x2, &w2) in nodes.iter().zip(&weights) {
                let (_, dphi) = endpoint_stretch(x2, FRAC_PI_2);
                area += w1 * w2 * 8.0 * theta.sin() * dtheta * dphi;
            }
        }
        assert!(
            (area - 4.0 * std::f64::consts::PI).abs() < 1e-6,
            "area = {area}"
        );
    }

    #[test]
    fn low_discrepancy_sequences_start_as_expected() {
        assert_eq!(radical_inverse_base2(1), 0.5);
        assert_eq!(radical_inverse_base2(2), 0.25);
        assert_eq!(radical_inverse_base2(3), 0.75);
        assert!((radical_inverse_base3(1) - 1.0 / 3.0).abs() < 1e-15);
        assert!((radical_inverse_base3(2) - 2.0 / 3.0).abs() < 1e-15);
        assert!((radical_inverse_base3(3) - 1.0 / 9.0).abs() < 1e-15);
        assert!((radical_inverse_base3(4) - 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn exhausted_circle_budget_is_reported() {
        let p = PeakParams::new(0.85, &[0.1, 0.05]).unwrap();
        let caps = EffortCaps {
            circle_rel_tol: 1e-13,
            circle_max_evals: 60,
            sphere_points: 1,
        };
        assert!(matches!(
            brute_with_caps(&p, caps),
            Err(OracleError::BudgetExceeded { .. })
        ));
    }
}
