//! Reference values for the moment integrals that anchor the toolkit's
//! quantitative checks.
//!
//! The central quantity is the inverse-peak moment
//!
//! ```text
//! I(H, gamma) = \int_{S^{n-1}} \int_{\Delta_n}
//!     (max_j t_j^H |y_j|)^{-n(1+avg gamma)}
//!     \prod_j |y_j|^{gamma_j}  dt  dH^{n-1}(y)
//! ```
//!
//! over the solid unit simplex in `t` and the Euclidean unit sphere in `y`.
//! Three independent evaluations are provided:
//!
//! * a closed form assembled from log-Gamma values
//!   ([`peak_moment_closed_form`]),
//! * a brute-force evaluation that never touches the closed form
//!   ([`peak_moment_brute_force`]): exact in one dimension, adaptive
//!   quadrature over the quarter circle in two, randomized quasi-Monte
//!   Carlo over the sphere in three,
//! * exponential-weight identities tying the moment to two unconstrained
//!   integrals with their own closed forms
//!   ([`exp_weighted_identity_check`]).
//!
//! Agreement across the three pillars certifies the constants that the
//! spectrum, simulation, and local-time modules test against.

mod brute;
mod closed;
mod identity;
mod params;

pub use brute::{peak_moment_brute_force, Estimate};
pub use closed::{exp_weighted_constant, max_moment_closed_form, peak_moment_closed_form};
pub use identity::{exp_weighted_identity_check, Gauge, IdentityReport};
pub use params::PeakParams;

use rosenlab_core::CoreError;
use thiserror::Error;

/// Errors surfaced by the reference evaluations.
#[derive(Debug, Error)]
pub enum OracleError {
    #[error("invalid parameter {name}: {value} (expected {expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: String,
    },
    #[error("{what} supports at most {max} coordinates, got {n}")]
    Unsupported {
        what: &'static str,
        n: usize,
        max: usize,
    },
    #[error("evaluation budget exhausted after {evaluations} evaluations (error estimate {error:.3e})")]
    BudgetExceeded { evaluations: usize, error: f64 },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl OracleError {
    /// Converts a quadrature budget failure into the oracle-level variant,
    /// passing other core errors through.
    pub(crate) fn from_core(err: CoreError) -> Self {
        match err {
            CoreError::QuadratureBudget { max_evals, error } => OracleError::BudgetExceeded {
                evaluations: max_evals,
                error,
            },
            other => OracleError::Core(other),
        }
    }
}
