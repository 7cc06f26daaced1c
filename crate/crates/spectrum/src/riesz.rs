//! Convolution operators with kernel `d |x-y|^(order-1)` on bounded sets.

use rosenlab_core::{Spectrum, StepProfile};
use statrs::function::gamma::ln_gamma;

use crate::{lapack, SpectrumError};

/// Normalization constant that makes the kernel `d |x-y|^(order-1)` act as
/// the Fourier multiplier `|w|^(-order)`.
pub fn riesz_constant(order: f64) -> f64 {
    assert!(
        order > 0.0 && order < 1.0,
        "kernel order must lie in (0,1), got {order}"
    );
    let log_d = ln_gamma((1.0 - order) / 2.0)
        - order * std::f64::consts::LN_2
        - 0.5 * std::f64::consts::PI.ln()
        - ln_gamma(order / 2.0);
    log_d.exp()
}

fn antiderivative(order: f64, u: f64) -> f64 {
    u.abs().powf(order + 1.0) / (order * (order + 1.0))
}

/// Galerkin matrix of the kernel `constant * |x-y|^(order-1)` over the
/// orthonormal piecewise-constant basis on the given cells. Cell integrals
/// are exact, including the weakly singular diagonal.
pub fn convolution_galerkin(order: f64, cells: &[(f64, f64)], constant: f64) -> Vec<f64> {
    let n = cells.len();
    let mut matrix = vec![0.0f64; n * n];
    let widths: Vec<f64> = cells.iter().map(|(a, b)| b - a).collect();
    for i in 0..n {
        let (ai, bi) = cells[i];
        for j in 0..=i {
            let (aj, bj) = cells[j];
            let integral = antiderivative(order, bi - aj) + antiderivative(order, ai - bj)
                - antiderivative(order, ai - aj)
                - antiderivative(order, bi - bj);
            let entry = constant * integral / (widths[i] * widths[j]).sqrt();
            matrix[i * n + j] = entry;
            matrix[j * n + i] = entry;
        }
    }
    matrix
}

fn cell_average(order: f64, x: f64, a: f64, b: f64, constant: f64) -> f64 {
    // (1/(b-a)) * integral of constant*|x-y|^(order-1) over y in [a, b].
    let primitive = |u: f64| u.signum() * u.abs().powf(order) / order;
    constant * (primitive(x - a) - primitive(x - b)) / (b - a)
}

/// Collocation matrix for the same kernel: midpoint nodes with every cell
/// integral taken analytically in one variable, then symmetrized. An
/// independent discretization of the operator with its own error law,
/// used as a cross-check for the Galerkin route.
pub fn convolution_nystrom(order: f64, cells: &[(f64, f64)], constant: f64) -> Vec<f64> {
    let n = cells.len();
    let mut matrix = vec![0.0f64; n * n];
    let mids: Vec<f64> = cells.iter().map(|(a, b)| 0.5 * (a + b)).collect();
    let widths: Vec<f64> = cells.iter().map(|(a, b)| b - a).collect();
    for i in 0..n {
        for j in 0..=i {
            let (aj, bj) = cells[j];
            let (ai, bi) = cells[i];
            let row = cell_average(order, mids[i], aj, bj, constant);
            let col = cell_average(order, mids[j], ai, bi, constant);
            let entry = 0.5 * (row + col) * (widths[i] * widths[j]).sqrt();
            matrix[i * n + j] = entry;
            matrix[j * n + i] = entry;
        }
    }
    matrix
}

fn uniform_cells(a: f64, b: f64, n_cells: usize) -> Vec<(f64, f64)> {
    let h = (b - a) / n_cells as f64;
    (0..n_cells)
        .map(|i| {
            let left = a + i as f64 * h;
            let right = if i + 1 == n_cells {
                b
            } else {
                a + (i + 1) as f64 * h
            };
            (left, right)
        })
        .collect()
}

/// The operator with kernel `d_alpha |x-y|^(alpha-1)` restricted to a
/// finite interval or to the support of a step profile.
#[derive(Debug, Clone)]
pub struct RieszKernelOperator {
    alpha: f64,
    cells: Vec<(f64, f64)>,
    constant: f64,
}

impl RieszKernelOperator {
    /// Operator on a single interval `[a, b]` with `n_cells` uniform cells.
    pub fn on_interval(
        alpha: f64,
        a: f64,
        b: f64,
        n_cells: usize,
    ) -> Result<Self, SpectrumError> {
        if !(alpha > 0.0 && alpha < 0.5) {
            return Err(SpectrumError::InvalidParam {
                name: "alpha",
                value: alpha,
                expected: "a value in (0, 1/2)",
            });
        }
        if !(b > a) || !a.is_finite() || !b.is_finite() {
            return Err(SpectrumError::InvalidParam {
                name: "interval",
                value: b - a,
                expected: "a nonempty finite interval",
            });
        }
        if n_cells == 0 {
            return Err(SpectrumError::InvalidParam {
                name: "n_cells",
                value: 0.0,
                expected: "a positive cell count",
            });
        }
        Ok(Self {
            alpha,
            cells: uniform_cells(a, b, n_cells),
            constant: riesz_constant(alpha),
        })
    }

    /// Operator on an explicit cell partition, e.g. a mesh graded
    /// toward the interval endpoints.
    pub fn from_cells(alpha: f64, cells: Vec<(f64, f64)>) -> Result<Self, SpectrumError> {
        if !(alpha > 0.0 && alpha < 0.5) {
            return Err(SpectrumError::InvalidParam {
                name: "alpha",
                value: alpha,
                expected: "a value in (0, 1/2)",
            });
        }
        if cells.is_empty() || cells.iter().any(|&(a, b)| !(b > a) || !a.is_finite()) {
            return Err(SpectrumError::InvalidParam {
                name: "cells",
                value: cells.len() as f64,
                expected: "a nonempty list of finite cells",
            });
        }
        Ok(Self {
            alpha,
            cells,
            constant: riesz_constant(alpha),
        })
    }

    /// Operator restricted to the cells of a profile grid where the
    /// profile level is nonzero.
    pub fn on_support(
        alpha: f64,
        profile: &StepProfile,
        n_cells: usize,
    ) -> Result<Self, SpectrumError> {
        if !(alpha > 0.0 && alpha < 0.5) {
            return Err(SpectrumError::InvalidParam {
                name: "alpha",
                value: alpha,
                expected: "a value in (0, 1/2)",
            });
        }
        let grid = crate::grid::profile_grid(profile, n_cells);
        let cells = grid
            .cells()
            .iter()
            .zip(grid.levels())
            .filter(|(_, level)| **level != 0.0)
            .map(|(cell, _)| *cell)
            .collect();
        Ok(Self {
            alpha,
            cells,
            constant: riesz_constant(alpha),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn cells(&self) -> &[(f64, f64)] {
        &self.cells
    }

    /// Eigenvalues via the exact-cell Galerkin discretization.
    pub fn eig(&self) -> Result<Spectrum, SpectrumError> {
        let n = self.cells.len();
        let matrix = convolution_galerkin(self.alpha, &self.cells, self.constant);
        let eigs = lapack::sym_eigvals(matrix, n)?;
        Ok(Spectrum::new(eigs, n, None, 0.0, 0.0)?)
    }

    /// Eigenvalues via midpoint Nystrom collocation; an independent
    /// discretization of the same operator, used as a cross-check.
    pub fn eig_nystrom(&self) -> Result<Spectrum, SpectrumError> {
        let n = self.cells.len();
        let matrix = convolution_nystrom(self.alpha, &self.cells, self.constant);
        let eigs = lapack::sym_eigvals(matrix, n)?;
        Ok(Spectrum::new(eigs, n, None, 0.0, 0.0)?)
    }
}
