use std::cell::RefCell;

use rosenlab_core::{quad, Budget};
use serde::Serialize;

use crate::brute::Estimate;
use crate::{exp_weighted_constant, max_moment_closed_form, peak_moment_closed_form};
use crate::{OracleError, PeakParams};

/// Normalizing gauge applied to the unconstrained coordinate block when the
/// moment is reduced to a one-dimensional profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Gauge {
    /// Coordinate-wise maximum of the absolute values.
    Max,
}

/// Outcome of the exponential-weight cross-checks.
///
/// Two integrals are evaluated by honest nested quadrature and compared
/// against the values the closed forms predict for them:
///
/// * `exp_weighted`: the integral of
///   `exp(-max_j t_j^H |y_j|) exp(-sum t_j) prod |y_j|^{gamma_j}` over
///   unconstrained positive `t` and real `y`, which must equal the
///   inverse-peak moment divided by [`exp_weighted_constant`];
/// * `gauge_moment`: the weighted moment of the gauge function alone,
///   compared against its own closed form.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IdentityReport {
    pub exp_weighted: Estimate,
    pub exp_weighted_reference: f64,
    pub gauge_moment: Estimate,
    pub gauge_moment_reference: f64,
}

impl IdentityReport {
    pub fn exp_weighted_rel_err(&self) -> f64 {
        self.exp_weighted.rel_err(self.exp_weighted_reference)
    }

    pub fn gauge_moment_rel_err(&self) -> f64 {
        self.gauge_moment.rel_err(self.gauge_moment_reference)
    }
}

#[derive(Debug, Clone, Copy)]
struct IdentityCaps {
    inner_rel_tol: f64,
    outer_rel_tol: f64,
    inner_max_evals: usize,
    outer_max_evals: usize,
}

impl IdentityCaps {
    fn for_budget(budget: Budget) -> Self {
        match budget {
            Budget::Desk => Self {
                inner_rel_tol: 1e-9,
                outer_rel_tol: 1e-7,
                inner_max_evals: 6_000,
                outer_max_evals: 12_000,
            },
            Budget::Thorough => Self {
                inner_rel_tol: 1e-10,
                outer_rel_tol: 1e-8,
                inner_max_evals: 24_000,
                outer_max_evals: 48_000,
            },
        }
    }
}

/// Collects the first failure raised inside a nested quadrature stack,
/// poisoning the numeric result with NaN so the outer levels terminate.
struct FailSlot(RefCell<Option<OracleError>>);

impl FailSlot {
    fn new() -> Self {
        Self(RefCell::new(None))
    }

    fn record(&self, err: OracleError) -> f64 {
        self.0.borrow_mut().get_or_insert(err);
        f64::NAN
    }

    fn finish(self, value: Estimate) -> Result<Estimate, OracleError> {
        match self.0.into_inner() {
            Some(err) => Err(err),
            None => Ok(value),
        }
    }
}

/// Verifies the exponential-weight identities for one or two coordinates,
/// returning the quadrature values next to their closed-form references.
/// Nothing in the quadrature path reuses the brute-force machinery, so the
/// comparison is an independent certificate of the constants.
pub fn exp_weighted_identity_check(
    p: &PeakParams,
    gauge: Gauge,
    budget: Budget,
) -> Result<IdentityReport, OracleError> {
    let caps = IdentityCaps::for_budget(budget);
    let exp_weighted = match p.n() {
        1 => exp_weighted_1d(p, caps)?,
        2 => exp_weighted_2d(p, caps)?,
        n => {
            return Err(OracleError::Unsupported {
                what: "identity check",
                n,
                max: 2,
            })
        }
    };
    let gauge_moment = match gauge {
        Gauge::Max => match p.n() {
            1 => max_moment_1d(p, caps)?,
            _ => max_moment_2d(p, caps)?,
        },
    };
    Ok(IdentityReport {
        exp_weighted,
        exp_weighted_reference: peak_moment_closed_form(p) / exp_weighted_constant(p),
        gauge_moment,
        gauge_moment_reference: max_moment_closed_form(p),
    })
}

/// `2 int_0^inf e^{-t} [ int_0^inf e^{-t^H y} y^gamma dy ] dt`, with the
/// head of the outer integral regularized by the substitution `t = v^p`.
fn exp_weighted_1d(p: &PeakParams, caps: IdentityCaps) -> Result<Estimate, OracleError> {
    let h = p.hurst();
    let g = p.gammas()[0];
    let fail = FailSlot::new();
    let inner = |t: f64| {
        let a = t.powf(h);
        match quad::adaptive_to_infinity(
            |y| (-a * y).exp() * y.powf(g),
            0.0,
            0.0,
            caps.inner_rel_tol,
            caps.inner_max_evals,
        ) {
            Ok(r) => r.value,
            Err(e) => fail.record(OracleError::from_core(e)),
        }
    };
    let sub = 2.0 / (1.0 - h * (1.0 + g));
    let head = quad::adaptive(
        |v| {
            let t = v.powf(sub);
            (-t).exp() * inner(t) * sub * v.powf(sub - 1.0)
        },
        0.0,
        1.0,
        0.0,
        caps.outer_rel_tol,
        caps.outer_max_evals,
    )
    .map_err(OracleError::from_core)?;
    let tail = quad::adaptive_to_infinity(
        |t| (-t).exp() * inner(t),
        1.0,
        0.0,
        caps.outer_rel_tol,
        caps.outer_max_evals,
    )
    .map_err(OracleError::from_core)?;
    let value = 2.0 * (head.value + tail.value);
    let error = 2.0 * (head.abs_error + tail.abs_error) + value.abs() * 2.0 * caps.inner_rel_tol;
    fail.finish(Estimate { value, error })
}

/// Four-fold nested quadrature of
/// `4 int e^{-t1} int e^{-t2} int y1^{g1} int y2^{g2}
///    e^{-max(t1^H y1, t2^H y2)} dy2 dy1 dt2 dt1`
/// over positive coordinates. Both `t`-heads use the regularizing power
/// substitution; the innermost level splits at the kink of the maximum,
/// where the constant branch integrates exactly.
fn exp_weighted_2d(p: &PeakParams, caps: IdentityCaps) -> Result<Estimate, OracleError> {
    let h = p.hurst();
    let (g1, g2) = (p.gammas()[0], p.gammas()[1]);
    let fail = FailSlot::new();

    let y_block = |t1: f64, t2: f64| {
        let (a1, a2) = (t1.powf(h), t2.powf(h));
        let inner_y2 = |y1: f64| {
            // Below the kink the maximum is a1*y1 and the power integrates
            // exactly; above it the tail decays in y2.
            let kink = a1 * y1 / a2;
            let flat = (-a1 * y1).exp() * kink.powf(1.0 + g2) / (1.0 + g2);
            let tail = match quad::adaptive_to_infinity(
                |y2| (-a2 * y2).exp() * y2.powf(g2),
                kink,
                0.0,
                caps.inner_rel_tol,
                caps.inner_max_evals,
            ) {
                Ok(r) => r.value,
                Err(e) => fail.record(OracleError::from_core(e)),
            };
            flat + tail
        };
        match quad::adaptive_to_infinity(
            |y1| y1.powf(g1) * inner_y2(y1),
            0.0,
            0.0,
            10.0 * caps.inner_rel_tol,
            caps.inner_max_evals,
        ) {
            Ok(r) => r.value,
            Err(e) => fail.record(OracleError::from_core(e)),
        }
    };

    let t2_level = |t1: f64| {
        let sub = 2.0 / (1.0 - h * (1.0 + g2));
        let head = quad::adaptive(
            |v| {
                let t2 = v.powf(sub);
                (-t2).exp() * y_block(t1, t2) * sub * v.powf(sub - 1.0)
            },
            0.0,
            1.0,
            0.0,
            3.0 * caps.outer_rel_tol,
            caps.outer_max_evals,
        );
        let tail = quad::adaptive_to_infinity(
            |t2| (-t2).exp() * y_block(t1, t2),
            1.0,
            0.0,
            3.0 * caps.outer_rel_tol,
            caps.outer_max_evals,
        );
        match (head, tail) {
            (Ok(a), Ok(b)) => a.value + b.value,
            (Err(e), _) | (_, Err(e)) => fail.record(OracleError::from_core(e)),
        }
    };

    let sub = 2.0 / (1.0 - h * (1.0 + g1));
    let head = quad::adaptive(
        |v| {
            let t1 = v.powf(sub);
            (-t1).exp() * t2_level(t1) * sub * v.powf(sub - 1.0)
        },
        0.0,
        1.0,
        0.0,
        caps.outer_rel_tol,
        caps.outer_max_evals,
    )
    .map_err(OracleError::from_core)?;
    let tail = quad::adaptive_to_infinity(
        |t1| (-t1).exp() * t2_level(t1),
        1.0,
        0.0,
        caps.outer_rel_tol,
        caps.outer_max_evals,
    )
    .map_err(OracleError::from_core)?;
    let value = 4.0 * (head.value + tail.value);
    let error = 4.0 * (head.abs_error + tail.abs_error)
        + value.abs() * (8.0 * caps.outer_rel_tol + 20.0 * caps.inner_rel_tol);
    fail.finish(Estimate { value, error })
}

/// `2 int_0^inf e^{-y} y^gamma dy` by direct quadrature.
fn max_moment_1d(p: &PeakParams, caps: IdentityCaps) -> Result<Estimate, OracleError> {
    let g = p.gammas()[0];
    let r = quad::adaptive_to_infinity(
        |y| (-y).exp() * y.powf(g),
        0.0,
        0.0,
        caps.inner_rel_tol,
        caps.outer_max_evals,
    )
    .map_err(OracleError::from_core)?;
    Ok(Estimate {
        value: 2.0 * r.value,
        error: 2.0 * r.abs_error,
    })
}

/// `4 int y1^{g1} [ int e^{-max(y1, y2)} y2^{g2} dy2 ] dy1` over positive
/// coordinates; the sub-kink branch is a plain power and integrates exactly.
fn max_moment_2d(p: &PeakParams, caps: IdentityCaps) -> Result<Estimate, OracleError> {
    let (g1, g2) = (p.gammas()[0], p.gammas()[1]);
    let fail = FailSlot::new();
    let inner = |y1: f64| {
        let flat = (-y1).exp() * y1.powf(1.0 + g2) / (1.0 + g2);
        let tail = match quad::adaptive_to_infinity(
            |y2| (-y2).exp() * y2.powf(g2),
            y1,
            0.0,
            caps.inner_rel_tol,
            caps.inner_max_evals,
        ) {
            Ok(r) => r.value,
            Err(e) => fail.record(OracleError::from_core(e)),
        };
        flat + tail
    };
    let r = quad::adaptive_to_infinity(
        |y1| y1.powf(g1) * inner(y1),
        0.0,
        0.0,
        caps.outer_rel_tol,
        caps.outer_max_evals,
    )
    .map_err(OracleError::from_core)?;
    let value = 4.0 * r.value;
    let error = 4.0 * r.abs_error + value.abs() * 2.0 * caps.inner_rel_tol;
    fail.finish(Estimate { value, error })
}
