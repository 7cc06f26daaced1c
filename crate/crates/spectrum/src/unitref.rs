//! Cached reference spectrum: singular values of the kernel operator of
//! order `alpha` restricted to the unit interval. These feed the decay
//! products and ratio denominators used throughout the verification
//! suite, so they are computed once at high resolution and cached on
//! disk.

use rosenlab_core::cache;
use rosenlab_core::Hurst;

use crate::riesz::RieszKernelOperator;
use crate::SpectrumError;

/// Resolution of the cached reference; high enough that the values used
/// downstream (at most a few hundred) are converged well past their
/// consumers' tolerances.
pub const UNIT_REFERENCE_CELLS: usize = 2000;

/// Singular values of the unit-interval operator of kernel order `alpha`,
/// descending, cached on disk keyed by `(alpha, n_cells)`.
///
/// A cache miss computes and stores atomically; concurrent duplicate
/// computation is harmless because stores are idempotent renames.
pub fn unit_reference_singular_values(
    alpha: f64,
    n_cells: usize,
) -> Result<Vec<f64>, SpectrumError> {
    let dir = cache::cache_dir();
    let key = format!("unitref|alpha={:016x}|cells={n_cells}", alpha.to_bits());
    let path = cache::entry_path(&dir, "unitref", &key);
    if let Some(values) = cache::load_f64s(&path, &key).map_err(SpectrumError::Core)? {
        return Ok(values);
    }
    let spectrum = RieszKernelOperator::on_interval(alpha, 0.0, 1.0, n_cells)?.eig()?;
    let values = spectrum.singular_values();
    cache::store_f64s(&path, &key, &values).map_err(SpectrumError::Core)?;
    Ok(values)
}

/// Reference spectrum at the order tied to a Hurst index (half of it),
/// at the default resolution.
pub fn unit_reference_for(hurst: Hurst) -> Result<Vec<f64>, SpectrumError> {
    unit_reference_singular_values(hurst.alpha(), UNIT_REFERENCE_CELLS)
}
