//! Local-time estimation on simulated paths, with scaling checks and
//! path-regularity diagnostics.
//!
//! Two estimators of the occupation density are provided: a binned
//! occupation histogram and a band-limited Fourier inversion of the
//! empirical occupation measure. On top of them sit Monte Carlo checks
//! of the small-window moment scaling and the spatial regularity of the
//! local time, plus two per-path diagnostics: a scaled sup of the local
//! time over shrinking windows and an oscillation floor that separates
//! rough paths from smooth injected controls.

mod diagnostics;
mod estimate;
mod scaling;

pub use diagnostics::{
    irregularity_diagnostic, limsup_diagnostic, IrregularityReport, LimsupReport,
};
pub use estimate::{local_time_fourier, local_time_histogram};
pub use rosenlab_core::{LocalTimeEstimate, LocalTimeMethod};
pub use scaling::{
    verify_moment_scaling, verify_space_holder, MomentScalingReport, ShiftMode,
    SpaceHolderReport,
};

use thiserror::Error;

/// Errors surfaced by estimators and diagnostics.
#[derive(Debug, Error)]
pub enum LoctimeError {
    #[error("invalid parameter {name}: {value} (expected {expected})")]
    InvalidParam {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    #[error("interval contains {points} grid points; at least 2 are required")]
    EmptyInterval { points: usize },
    #[error(
        "frequency cutoff too low: clipped mass {clipped:.6} exceeds {limit:.6} \
         of the interval length"
    )]
    CutoffTooLow { clipped: f64, limit: f64 },
    #[error(
        "level occupied in only {fraction:.1}% of paths at the smallest window; \
         at least {required:.0}% required"
    )]
    InsufficientOccupation { fraction: f64, required: f64 },
    #[error("scale {scale} is below the resolvable minimum {min_scale}")]
    Resolution { scale: f64, min_scale: f64 },
    #[error(transparent)]
    Core(#[from] rosenlab_core::CoreError),
    #[error(transparent)]
    Simulate(#[from] rosenlab_simulate::SimulateError),
}
