//! Shared types and numerical utilities for the rosenlab toolkit.
//!
//! This crate defines the domain types exchanged between the operator,
//! characteristic-functional, simulation, and local-time layers (Hurst
//! parameter, step profiles, spectra, path samples, local-time estimates,
//! run manifests), together with deterministic RNG stream splitting, the
//! flat config format, binary file formats, and small numerical kernels
//! (adaptive quadrature, Gauss rules, log-log fits, sample statistics).

pub mod budget;
pub mod cache;
pub mod config;
pub mod fit;
pub mod hurst;
pub mod localtime;
pub mod manifest;
pub mod path;
pub mod profile;
pub mod quad;
pub mod rng;
pub mod spectrum;
pub mod stats;

pub use budget::Budget;
pub use hurst::Hurst;
pub use localtime::{LocalTimeEstimate, LocalTimeMethod};
pub use manifest::RunManifest;
pub use path::{GeneratorKind, PathSample};
pub use profile::StepProfile;
pub use spectrum::Spectrum;

use thiserror::Error;

/// Errors raised by core type validation and file handling.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("hurst parameter {value} outside the open interval (0.5, 1)")]
    InvalidHurst { value: f64 },

    #[error("profile must contain at least one time point")]
    EmptyProfile,

    #[error("profile times and coefficients differ in length ({times} vs {coeffs})")]
    ProfileLengthMismatch { times: usize, coeffs: usize },

    #[error("profile times must be strictly increasing and positive (offends at index {index})")]
    ProfileTimesNotIncreasing { index: usize },

    #[error("{what} must be finite (found {value})")]
    NonFinite { what: &'static str, value: f64 },

    #[error("spectrum residual imaginary part {value} is negative")]
    NegativeResidual { value: f64 },

    #[error("path sample needs at least two values (got {len})")]
    PathTooShort { len: usize },

    #[error("path sample must start at zero (got {value})")]
    PathNotAnchored { value: f64 },

    #[error("path time step must be positive (got {value})")]
    InvalidTimeStep { value: f64 },

    #[error("local-time bin width must be positive (got {value})")]
    InvalidBinWidth { value: f64 },

    #[error("local-time interval [{a}, {b}] is empty or reversed")]
    EmptyInterval { a: f64, b: f64 },

    #[error("local-time grid and density lengths differ ({grid} vs {density})")]
    GridLengthMismatch { grid: usize, density: usize },

    #[error("local-time density must be nonnegative (found {value} at index {index})")]
    NegativeDensity { index: usize, value: f64 },

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("file {path}: bad magic (expected {expected})")]
    BadMagic { path: String, expected: &'static str },

    #[error("file {path}: unsupported format version {version}")]
    BadVersion { path: String, version: u32 },

    #[error("file {path}: truncated or inconsistent payload")]
    CorruptFile { path: String },

    #[error("unknown generator tag {tag:?}")]
    UnknownGenerator { tag: String },

    #[error("unknown budget {value:?} (expected \"desk\" or \"thorough\")")]
    UnknownBudget { value: String },

    #[error("quadrature budget of {max_evals} evaluations exhausted (error estimate {error:.3e})")]
    QuadratureBudget { max_evals: usize, error: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
