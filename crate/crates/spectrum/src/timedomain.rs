//! Time-domain discretization: the spectrum of the composition
//! `K_alpha M_g K_alpha`, computed through the equal nonzero spectrum of
//! `M_g K_{2 alpha}`.

use ndarray::Array2;
use rosenlab_core::{Spectrum, StepProfile};

use crate::grid::profile_grid;
use crate::riesz::{convolution_galerkin, riesz_constant};
use crate::{lapack, SpectrumError};

/// Spectrum of the operator with multiplier `g` given by the profile's
/// level function and convolution kernel of order `2 alpha`.
///
/// The product `M_g K` is not symmetric when `g` changes sign, but with
/// `W = |D|^{1/2} K |D|^{1/2}` and `S = sign(D)` its nonzero eigenvalues
/// equal those of the symmetric matrix `W^{1/2} S W^{1/2}`, so a real
/// solver applies and the returned eigenvalues carry no imaginary
/// residue by construction.
pub fn eig_time_domain(
    profile: &StepProfile,
    alpha: f64,
    n_nodes: usize,
) -> Result<Spectrum, SpectrumError> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(SpectrumError::InvalidParam {
            name: "alpha",
            value: alpha,
            expected: "a value in (0, 1/2)",
        });
    }
    if n_nodes == 0 {
        return Err(SpectrumError::InvalidParam {
            name: "n_nodes",
            value: 0.0,
            expected: "a positive node count",
        });
    }

    let grid = profile_grid(profile, n_nodes);
    let mut cells = Vec::new();
    let mut levels = Vec::new();
    for (cell, level) in grid.cells().iter().zip(grid.levels()) {
        if *level != 0.0 {
            cells.push(*cell);
            levels.push(*level);
        }
    }
    let n = cells.len();
    if n == 0 {
        return Ok(Spectrum::new(Vec::new(), 0, None, 0.0, 0.0)?);
    }

    let order = 2.0 * alpha;
    let kernel = convolution_galerkin(order, &cells, riesz_constant(order));

    let root_abs: Vec<f64> = levels.iter().map(|g| g.abs().sqrt()).collect();
    let mut weighted = kernel;
    for i in 0..n {
        for j in 0..n {
            weighted[i * n + j] *= root_abs[i] * root_abs[j];
        }
    }

    let all_same_sign = levels.iter().all(|g| *g > 0.0) || levels.iter().all(|g| *g < 0.0);
    let eigs = if all_same_sign {
        let sign = levels[0].signum();
        lapack::sym_eigvals(weighted, n)?
            .into_iter()
            .map(|l| sign * l)
            .collect()
    } else {
        signed_spectrum(weighted, n, &levels)?
    };

    Ok(Spectrum::new(eigs, n, None, 0.0, 0.0)?)
}

/// Eigenvalues of `W^{1/2} S W^{1/2}` for positive semidefinite `W` and
/// the diagonal sign matrix of `levels`.
fn signed_spectrum(weighted: Vec<f64>, n: usize, levels: &[f64]) -> Result<Vec<f64>, SpectrumError> {
    let (vals, vecs) = lapack::sym_eig(weighted, n)?;
    // W is positive semidefinite up to rounding; clamp stray negatives.
    let quarter_roots: Vec<f64> = vals.iter().map(|l| l.max(0.0).powf(0.25)).collect();

    let mut b = Array2::<f64>::zeros((n, n));
    for (k, vec_k) in vecs.iter().enumerate() {
        for (j, &v) in vec_k.iter().enumerate() {
            b[[k, j]] = quarter_roots[k] * v;
        }
    }

    let mut b_signed = b.clone();
    for (j, g) in levels.iter().enumerate() {
        let s = g.signum();
        b_signed.column_mut(j).mapv_inplace(|x| s * x);
    }

    // C = (B^T B) S (B^T B) = B^T (B S B^T) B, assembled symmetrically.
    let inner = b_signed.dot(&b.t());
    let symmetric = b.t().dot(&inner).dot(&b);
    let buf = symmetric.into_raw_vec_and_offset().0;
    lapack::sym_eigvals(buf, n)
}
