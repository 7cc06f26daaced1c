//! Stochastic engine for the rosenlab toolkit: chi-squared marginal
//! sampling from the operator spectrum, Hermite-rank-2 path synthesis
//! from fractional Gaussian noise, and the Monte Carlo verifications
//! built on them.

pub mod expmoment;
pub mod fgn;
pub mod marginal;
pub mod path;
pub mod suptail;

pub use expmoment::{verify_exp_moment, ExpMomentReport};
pub use fgn::{fgn_autocovariance, FgnGenerator};
pub use marginal::MarginalSampler;
pub use path::{sample_path, sample_paths, PATH_POINT_BUDGET};
pub use rosenlab_core::{GeneratorKind, PathSample};
pub use suptail::{verify_sup_tail, SupTailReport};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimulateError {
    #[error("{name} = {value} is outside {expected}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error(
        "circulant embedding eigenvalue {min:.3e} is negative beyond the \
         clip tolerance (largest eigenvalue {max:.3e})"
    )]
    Embedding { min: f64, max: f64 },
    #[error("path generation needs {needed} fine-grid points but the budget allows {budget}")]
    BudgetExceeded { needed: usize, budget: usize },
    #[error(
        "only {events} paths exceed u = {threshold_u}; at least 50 are \
         needed for a stable tail fit"
    )]
    InsufficientTailEvents { threshold_u: f64, events: usize },
    #[error(transparent)]
    Core(#[from] rosenlab_core::CoreError),
    #[error(transparent)]
    Spectrum(#[from] rosenlab_spectrum::SpectrumError),
}
