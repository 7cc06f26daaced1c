//! One-dimensional quadrature: globally adaptive Gauss-Kronrod integration
//! and Gauss-Legendre rules for tensor-product use.

use crate::CoreError;
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// 15-point Kronrod abscissae on [-1, 1] (nonnegative half; symmetric).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.000000000000000,
];

/// Kronrod weights matching `XGK`.
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// 7-point Gauss weights; the Gauss nodes are `XGK[1], XGK[3], XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// Value, error estimate, and evaluation count of a quadrature run.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .partial_cmp(&other.error)
            .unwrap_or(Ordering::Equal)
    }
}

/// One Gauss-Kronrod 7/15 panel on [a, b].
fn qk15(f: &mut impl FnMut(f64) -> f64, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let fc = f(center);
    let mut resk = WGK[7] * fc;
    let mut resg = WG[3] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut samples = [0.0f64; 15];
    samples[14] = fc;

    for j in 0..7 {
        let x = half * XGK[j];
        let f1 = f(center - x);
        let f2 = f(center + x);
        samples[2 * j] = f1;
        samples[2 * j + 1] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }

    // Scaled error estimate in the style of classic Kronrod codes: compare
    // against the deviation-from-mean integral so smooth panels converge
    // faster than the raw |K - G| difference suggests.
    let mean = resk * 0.5;
    let mut resasc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        resasc += WGK[j] * ((samples[2 * j] - mean).abs() + (samples[2 * j + 1] - mean).abs());
    }
    let resasc = resasc * half.abs();
    let raw = ((resk - resg) * half).abs();
    let error = if resasc != 0.0 && raw != 0.0 {
        resasc * (1.0f64).min((200.0 * raw / resasc).powf(1.5))
    } else {
        raw
    };
    let _ = resabs;

    Segment {
        a,
        b,
        value: resk * half,
        error,
    }
}

/// Globally adaptive integration of `f` over [a, b].
///
/// Splits the worst panel until the summed error estimate falls below
/// `max(abs_tol, rel_tol * |value|)`; errors out when `max_evals` function
/// evaluations are not enough.
pub fn adaptive(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_evals: usize,
) -> Result<QuadResult, CoreError> {
    if a == b {
        return Ok(QuadResult {
            value: 0.0,
            abs_error: 0.0,
            evaluations: 0,
        });
    }
    if a > b {
        let flipped = adaptive(f, b, a, abs_tol, rel_tol, max_evals)?;
        return Ok(QuadResult {
            value: -flipped.value,
            ..flipped
        });
    }

    let mut heap = BinaryHeap::new();
    let mut evaluations = 15usize;
    heap.push(qk15(&mut f, a, b));

    loop {
        let total_value: f64 = heap.iter().map(|s| s.value).sum();
        let total_error: f64 = heap.iter().map(|s| s.error).sum();
        let target = abs_tol.max(rel_tol * total_value.abs());
        if total_error <= target {
            return Ok(QuadResult {
                value: total_value,
                abs_error: total_error,
                evaluations,
            });
        }
        if evaluations + 30 > max_evals {
            return Err(CoreError::QuadratureBudget {
                max_evals,
                error: total_error,
            });
        }
        let worst = heap.pop().expect("heap holds at least one segment");
        let mid = 0.5 * (worst.a + worst.b);
        // Degenerate split: the panel collapsed to machine width and still
        // exceeds tolerance; keep its estimate rather than looping forever.
        if mid <= worst.a || mid >= worst.b {
            let mut flattened = worst;
            flattened.error = 0.0;
            heap.push(flattened);
            continue;
        }
        heap.push(qk15(&mut f, worst.a, mid));
        heap.push(qk15(&mut f, mid, worst.b));
        evaluations += 30;
    }
}

/// Adaptive integration of `f` over [a, infinity) via `x = a + u / (1 - u)`.
pub fn adaptive_to_infinity(
    mut f: impl FnMut(f64) -> f64,
    a: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_evals: usize,
) -> Result<QuadResult, CoreError> {
    adaptive(
        move |u| {
            let denom = 1.0 - u;
            let x = a + u / denom;
            f(x) / (denom * denom)
        },
        0.0,
        1.0,
        abs_tol,
        rel_tol,
        max_evals,
    )
}

/// Gauss-Legendre nodes and weights on [-1, 1], by Newton iteration on the
/// Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi-style initial guess, then Newton.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, x);
            dp = d;
            let step = p / d;
            x -= step;
            if step.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Gauss-Legendre rule mapped to [a, b].
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        x.iter().map(|&t| mid + half * t).collect(),
        w.iter().map(|&wi| wi * half).collect(),
    )
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
