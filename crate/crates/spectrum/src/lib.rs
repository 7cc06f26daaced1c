//! Operator discretizations and singular-value machinery.
//!
//! This crate turns the two integral-operator representations of the
//! process into dense eigenvalue problems: a time-domain form driven by a
//! convolution kernel with an algebraic singularity, and a
//! frequency-domain form on a weighted line with a bounded Hermitian
//! kernel. On top of the raw spectra it provides decay-exponent fits and
//! the ratio checks used by the verification suite.

use thiserror::Error;

pub mod analysis;
pub mod frequency;
pub mod grid;
pub mod lapack;
pub mod riesz;
pub mod timedomain;
pub mod unitref;

pub use analysis::{
    fit_decay_exponent, verify_localization, verify_lower_bound, LocalizationReport,
    LowerBoundReport,
};
pub use frequency::{eig_spectral_domain, profile_variance, SpectralDomainOperator};
pub use riesz::{riesz_constant, RieszKernelOperator};
pub use timedomain::eig_time_domain;
pub use unitref::unit_reference_singular_values;

/// Errors from spectral computations.
#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("LAPACK driver {driver} failed with info = {info}")]
    EigenSolve { driver: &'static str, info: i32 },
    #[error("invalid parameter {name}: {value} (expected {expected})")]
    InvalidParam {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("assembled kernel matrix is not Hermitian: relative defect {defect:.3e}")]
    NonHermitian { defect: f64 },
    #[error(
        "unresolved Hilbert-Schmidt mass fraction {tail_fraction:.3e} exceeds tolerance {tol:.3e}"
    )]
    Truncation { tail_fraction: f64, tol: f64 },
    #[error("residual imaginary part {value:.3e} exceeds 1e-6 of the leading eigenvalue")]
    ResidualImag { value: f64 },
    #[error("spectrum has only {available} usable values, need {needed}")]
    InsufficientSpectrum { available: usize, needed: usize },
    #[error(transparent)]
    Core(#[from] rosenlab_core::CoreError),
}
