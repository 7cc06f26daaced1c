//! Characteristic functionals of second-chaos spectra, the unit-interval
//! decay product, and the quadrature-based bound verifications built on
//! them.

pub mod fourier;
pub mod gfn;
pub mod marginal;
pub mod product;

pub use fourier::{verify_fourier_bound, FourierBoundReport};
pub use gfn::{verify_gamma_bound, GFunction, GammaBoundReport};
pub use marginal::marginal_spectrum;
pub use product::{char_complex, char_modulus, CharFunctional};

use thiserror::Error;

/// Errors raised while evaluating characteristic functionals or the
/// integral verifications.
#[derive(Debug, Error)]
pub enum CharFnError {
    #[error("parameter {name} = {value} is invalid: expected {expected}")]
    InvalidParam {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("verification needs about {needed} operator solves but the budget allows {budget}")]
    BudgetExceeded { needed: usize, budget: usize },

    #[error(transparent)]
    Core(#[from] rosenlab_core::CoreError),

    #[error(transparent)]
    Spectrum(#[from] rosenlab_spectrum::SpectrumError),
}
