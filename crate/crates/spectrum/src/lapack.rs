//! Minimal LAPACK bindings for dense eigenvalue problems.
//!
//! Only the drivers the toolkit needs are declared (`dsyev`, `zheev`,
//! `dgeev`), linked against the system LAPACK. Matrices are passed as
//! contiguous row-major buffers; for symmetric and Hermitian inputs the
//! row/column-major mismatch does not change the spectrum, and for the
//! general driver only eigenvalues are requested (the spectrum of the
//! transpose is the same).

use num_complex::Complex64;
use std::ffi::c_char;

use crate::SpectrumError;

extern "C" {
    fn dsyev_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut f64,
        lda: *const i32,
        w: *mut f64,
        work: *mut f64,
        lwork: *const i32,
        info: *mut i32,
    );

    fn zheev_(
        jobz: *const c_char,
        uplo: *const c_char,
        n: *const i32,
        a: *mut Complex64,
        lda: *const i32,
        w: *mut f64,
        work: *mut Complex64,
        lwork: *const i32,
        rwork: *mut f64,
        info: *mut i32,
    );

    fn dgeev_(
        jobvl: *const c_char,
        jobvr: *const c_char,
        n: *const i32,
        a: *mut f64,
        lda: *const i32,
        wr: *mut f64,
        wi: *mut f64,
        vl: *mut f64,
        ldvl: *const i32,
        vr: *mut f64,
        ldvr: *const i32,
        work: *mut f64,
        lwork: *const i32,
        info: *mut i32,
    );
}

fn check_info(driver: &'static str, info: i32) -> Result<(), SpectrumError> {
    if info == 0 {
        Ok(())
    } else {
        Err(SpectrumError::EigenSolve { driver, info })
    }
}

/// Eigenvalues of a real symmetric matrix, ascending.
///
/// `a` is the full matrix in row-major order, length `n * n`; it is
/// consumed as LAPACK workspace.
pub fn sym_eigvals(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>, SpectrumError> {
    assert_eq!(a.len(), n * n, "matrix buffer must be n*n");
    if n == 0 {
        return Ok(Vec::new());
    }
    let jobz = b'N' as c_char;
    let uplo = b'L' as c_char;
    let dim = n as i32;
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;

    let mut query = [0.0f64];
    let lwork_query = -1i32;
    unsafe {
        dsyev_(
            &jobz,
            &uplo,
            &dim,
            a.as_mut_ptr(),
            &dim,
            w.as_mut_ptr(),
            query.as_mut_ptr(),
            &lwork_query,
            &mut info,
        );
    }
    check_info("dsyev", info)?;

    let lwork = (query[0] as i32).max(1);
    let mut work = vec![0.0f64; lwork as usize];
    unsafe {
        dsyev_(
            &jobz,
            &uplo,
            &dim,
            a.as_mut_ptr(),
            &dim,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            &mut info,
        );
    }
    check_info("dsyev", info)?;
    Ok(w)
}

/// Eigen-decomposition of a real symmetric matrix.
///
/// Returns `(values, vectors)` with values ascending and `vectors[k]` the
/// orthonormal eigenvector for `values[k]`.
pub fn sym_eig(mut a: Vec<f64>, n: usize) -> Result<(Vec<f64>, Vec<Vec<f64>>), SpectrumError> {
    assert_eq!(a.len(), n * n, "matrix buffer must be n*n");
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let jobz = b'V' as c_char;
    let uplo = b'L' as c_char;
    let dim = n as i32;
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;

    let mut query = [0.0f64];
    let lwork_query = -1i32;
    unsafe {
        dsyev_(
            &jobz,
            &uplo,
            &dim,
            a.as_mut_ptr(),
            &dim,
            w.as_mut_ptr(),
            query.as_mut_ptr(),
            &lwork_query,
            &mut info,
        );
    }
    check_info("dsyev", info)?;

    let lwork = (query[0] as i32).max(1);
    let mut work = vec![0.0f64; lwork as usize];
    unsafe {
        dsyev_(
            &jobz,
            &uplo,
            &dim,
            a.as_mut_ptr(),
            &dim,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            &mut info,
        );
    }
    check_info("dsyev", info)?;

    // LAPACK writes eigenvector k into its column k of the column-major
    // buffer, which is row k of the row-major view.
    let vectors = (0..n).map(|k| a[k * n..(k + 1) * n].to_vec()).collect();
    Ok((w, vectors))
}

/// Eigenvalues of a complex Hermitian matrix, ascending.
pub fn herm_eigvals(mut a: Vec<Complex64>, n: usize) -> Result<Vec<f64>, SpectrumError> {
    assert_eq!(a.len(), n * n, "matrix buffer must be n*n");
    if n == 0 {
        return Ok(Vec::new());
    }
    let jobz = b'N' as c_char;
    let uplo = b'L' as c_char;
    let dim = n as i32;
    let mut w = vec![0.0f64; n];
    let mut rwork = vec![0.0f64; (3 * n).max(1)];
    let mut info = 0i32;

    let mut query = [Complex64::new(0.0, 0.0)];
    let lwork_query = -1i32;
    unsafe {
        zheev_(
            &jobz,
            &uplo,
            &dim,
            a.as_mut_ptr(),
            &dim,
            w.as_mut_ptr(),
            query.as_mut_ptr(),
            &lwork_query,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    check_info("zheev", info)?;

    let lwork = (query[0].re as i32).max(1);
    let mut work = vec![Complex64::new(0.0, 0.0); lwork as usize];
    unsafe {
        zheev_(
            &jobz,
            &uplo,
            &dim,
            a.as_mut_ptr(),
            &dim,
            w.as_mut_ptr(),
            work.as_mut_ptr(),
            &lwork,
            rwork.as_mut_ptr(),
            &mut info,
        );
    }
    check_info("zheev", info)?;
    Ok(w)
}

/// Eigenvalues of a general real matrix as `(re, im)` pairs, unordered.
pub fn nonsym_eigvals(mut a: Vec<f64>, n: usize) -> Result<Vec<(f64, f64)>, SpectrumError> {
    assert_eq!(a.len(), n * n, "matrix buffer must be n*n");
    if n == 0 {
        return Ok(Vec::new());
    }
    let jobvl = b'N' as c_char;
    let jobvr = b'N' as c_char;
    let dim = n as i32;
    let mut wr = vec![0.0f64; n];
    let mut wi = vec![0.0f64; n];
    let mut info = 0i32;
    let ldv = 1i32;

    let mut query = [0.0f64];
    let lwork_query = -1i32;
    unsafe {
        dgeev_(
            &jobvl,
            &jobvr,
            &dim,
            a.as_mut_ptr(),
            &dim,
            wr.as_mut_ptr(),
            wi.as_mut_ptr(),
            std::ptr::null_mut(),
            &ldv,
            std::ptr::null_mut(),
            &ldv,
            query.as_mut_ptr(),
            &lwork_query,
            &mut info,
        );
    }
    check_info("dgeev", info)?;

    let lwork = (query[0] as i32).max(1);
    let mut work = vec![0.0f64; lwork as usize];
    unsafe {
        dgeev_(
            &jobvl,
            &jobvr,
            &dim,
            a.as_mut_ptr(),
            &dim,
            wr.as_mut_ptr(),
            wi.as_mut_ptr(),
            std::ptr::null_mut(),
            &ldv,
            std::ptr::null_mut(),
            &ldv,
            work.as_mut_ptr(),
            &lwork,
            &mut info,
        );
    }
    check_info("dgeev", info)?;
    Ok(wr.into_iter().zip(wi).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn symmetric_two_by_two() {
        let a = vec![2.0, 1.0, 1.0, 2.0];
        let w = sym_eigvals(a, 2).unwrap();
        assert_relative_eq!(w[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(w[1], 3.0, max_relative = 1e-12);
    }

    #[test]
    fn symmetric_eigenvectors_reconstruct() {
        let a = vec![2.0, 1.0, 0.0, 1.0, 3.0, 1.0, 0.0, 1.0, 4.0];
        let (w, v) = sym_eig(a.clone(), 3).unwrap();
        for (k, vec_k) in v.iter().enumerate() {
            for i in 0..3 {
                let av_i: f64 = (0..3).map(|j| a[i * 3 + j] * vec_k[j]).sum();
                assert_relative_eq!(av_i, w[k] * vec_k[i], epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn hermitian_matches_real_case() {
        let a = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(2.0, 0.0),
        ];
        let w = herm_eigvals(a, 2).unwrap();
        assert_relative_eq!(w[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(w[1], 3.0, max_relative = 1e-12);
    }

    #[test]
    fn general_driver_agrees_on_symmetric_input() {
        let a = vec![2.0, 1.0, 1.0, 2.0];
        let mut eigs: Vec<f64> = nonsym_eigvals(a, 2)
            .unwrap()
            .into_iter()
            .map(|(re, im)| {
                assert!(im.abs() < 1e-12);
                re
            })
            .collect();
        eigs.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert_relative_eq!(eigs[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(eigs[1], 3.0, max_relative = 1e-12);
    }
}
