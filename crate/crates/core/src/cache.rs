//! On-disk cache for expensive reusable arrays (reference spectra).
//!
//! Cache entries are little-endian binary files with a fixed 32-byte header:
//!
//! ```text
//! magic       8 bytes  b"RLSPEC01"
//! version     u32      1
//! count       u32      number of f64 payload entries
//! param_hash  u64      FNV-1a hash of the producing parameter string
//! reserved    u64      0
//! ```
//!
//! followed by `count` f64 values. A lookup hits only when magic, version,
//! and parameter hash all match; anything else is treated as a miss so stale
//! or foreign files are silently recomputed and replaced. Writes go through
//! a unique temporary file plus atomic rename, with a best-effort lock file
//! so concurrent processes do not duplicate long computations; the payload
//! is a pure function of the parameter string, so losing a race is harmless.

use crate::CoreError;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

const CACHE_MAGIC: &[u8; 8] = b"RLSPEC01";
const CACHE_VERSION: u32 = 1;
const LOCK_STALE_SECS: u64 = 300;

/// Cache directory: `$ROSENLAB_CACHE_DIR` if set, else a per-user directory
/// under the system temp dir.
pub fn cache_dir() -> PathBuf {
    match std::env::var_os("ROSENLAB_CACHE_DIR") {
        Some(dir) if !dir.is_empty() => PathBuf::from(dir),
        _ => std::env::temp_dir().join("rosenlab-cache"),
    }
}

/// FNV-1a hash of a parameter string; keys cache entries to their inputs.
pub fn param_hash(key: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in key.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}

/// File name for a cache entry: a readable stem plus the parameter hash.
pub fn entry_path(dir: &Path, stem: &str, key: &str) -> PathBuf {
    dir.join(format!("{stem}-{:016x}.bin", param_hash(key)))
}

/// Loads a cache entry. `Ok(None)` means miss (absent, foreign, or keyed to
/// different parameters); only real I/O failures surface as errors.
pub fn load_f64s(path: &Path, key: &str) -> Result<Option<Vec<f64>>, CoreError> {
    let mut file = match std::fs::File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut header = [0u8; 32];
    if file.read_exact(&mut header).is_err() {
        return Ok(None);
    }
    if &header[0..8] != CACHE_MAGIC {
        return Ok(None);
    }
    let version = u32::from_le_bytes(header[8..12].try_into().unwrap());
    let count = u32::from_le_bytes(header[12..16].try_into().unwrap()) as usize;
    let hash = u64::from_le_bytes(header[16..24].try_into().unwrap());
    if version != CACHE_VERSION || hash != param_hash(key) {
        return Ok(None);
    }
    let mut payload = vec![0u8; count * 8];
    if file.read_exact(&mut payload).is_err() {
        return Ok(None);
    }
    let values = payload
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(Some(values))
}

/// Stores a cache entry atomically (temp file + rename).
pub fn store_f64s(path: &Path, key: &str, values: &[f64]) -> Result<(), CoreError> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    let tmp = path.with_extension(format!("tmp-{}", std::process::id()));
    {
        let mut w = std::io::BufWriter::new(std::fs::File::create(&tmp)?);
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&CACHE_VERSION.to_le_bytes())?;
        w.write_all(&(values.len() as u32).to_le_bytes())?;
        w.write_all(&param_hash(key).to_le_bytes())?;
        w.write_all(&0u64.to_le_bytes())?;
        for &v in values {
            w.write_all(&v.to_le_bytes())?;
        }
        w.flush()?;
    }
    std::fs::rename(&tmp, path)?;
    Ok(())
}

/// Returns the cached array for `(stem, key)` in `dir`, computing and storing
/// it on a miss. Concurrent callers are serialized through a lock file; if
/// the lock cannot be taken (or is stale), the value is computed anyway and
/// the atomic rename keeps the entry consistent.
pub fn get_or_compute(
    dir: &Path,
    stem: &str,
    key: &str,
    compute: impl FnOnce() -> Result<Vec<f64>, CoreError>,
) -> Result<Vec<f64>, CoreError> {
    let path = entry_path(dir, stem, key);
    if let Some(values) = load_f64s(&path, key)? {
        return Ok(values);
    }
    let lock = path.with_extension("lock");
    let guard = LockGuard::acquire(&lock);
    // A concurrent process may have filled the entry while we waited.
    if guard.waited {
        if let Some(values) = load_f64s(&path, key)? {
            return Ok(values);
        }
    }
    let values = compute()?;
    store_f64s(&path, key, &values)?;
    Ok(values)
}

struct LockGuard {
    path: PathBuf,
    owned: bool,
    waited: bool,
}

impl LockGuard {
    fn acquire(path: &Path) -> LockGuard {
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        let mut waited = false;
        for _ in 0..100 {
            match std::fs::OpenOptions::new()
                .write(true)
                .create_new(true)
                .open(path)
            {
                Ok(_) => {
                    return LockGuard {
                        path: path.to_path_buf(),
                        owned: true,
                        waited,
                    }
                }
                Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
                    if lock_is_stale(path) {
                        let _ = std::fs::remove_file(path);
                        continue;
                    }
                    waited = true;
                    std::thread::sleep(std::time::Duration::from_millis(100));
                }
                // Unwritable cache dir: proceed without a lock.
                Err(_) => break,
            }
        }
        LockGuard {
            path: path.to_path_buf(),
            owned: false,
            waited,
        }
    }
}

fn lock_is_stale(path: &Path) -> bool {
    match std::fs::metadata(path).and_then(|m| m.modified()) {
        Ok(modified) => match modified.elapsed() {
            Ok(age) => age.as_secs() > LOCK_STALE_SECS,
            Err(_) => false,
        },
        Err(_) => false,
    }
}

impl Drop for LockGuard {
    fn drop(&mut self) {
        if self.owned {
            let _ = std::fs::remove_file(&self.path);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn store_then_load_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = entry_path(dir.path(), "unit-spectrum", "alpha=0.35|cells=100");
        let values = vec![1.0, -0.5, 1e-12, f64::MIN_POSITIVE];
        store_f64s(&path, "alpha=0.35|cells=100", &values).unwrap();
        let back = load_f64s(&path, "alpha=0.35|cells=100").unwrap().unwrap();
        assert_eq!(back, values);
    }

    #[test]
    fn mismatched_key_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("entry.bin");
        store_f64s(&path, "alpha=0.35", &[1.0]).unwrap();
        assert!(load_f64s(&path, "alpha=0.40").unwrap().is_none());
    }

    #[test]
    fn foreign_or_truncated_files_are_misses() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("entry.bin");
        std::fs::write(&path, b"garbage").unwrap();
        assert!(load_f64s(&path, "k").unwrap().is_none());
        assert!(load_f64s(&dir.path().join("absent.bin"), "k")
            .unwrap()
            .is_none());
    }

    #[test]
    fn get_or_compute_computes_once() {
        let dir = tempfile::tempdir().unwrap();
        let mut calls = 0;
        let first = get_or_compute(dir.path(), "ref", "p=1", || {
            calls += 1;
            Ok(vec![2.0, 3.0])
        })
        .unwrap();
        assert_eq!(first, vec![2.0, 3.0]);
        assert_eq!(calls, 1);
        let second = get_or_compute(dir.path(), "ref", "p=1", || {
            panic!("must hit the cache");
        })
        .unwrap();
        assert_eq!(second, vec![2.0, 3.0]);
        // No lock file left behind.
        assert!(!entry_path(dir.path(), "ref", "p=1")
            .with_extension("lock")
            .exists());
    }

    #[test]
    fn env_override_sets_cache_dir() {
        // Process-global env var: restore it afterwards to keep tests isolated.
        let old = std::env::var_os("ROSENLAB_CACHE_DIR");
        std::env::set_var("ROSENLAB_CACHE_DIR", "/tmp/rosenlab-test-cache");
        assert_eq!(cache_dir(), PathBuf::from("/tmp/rosenlab-test-cache"));
        match old {
            Some(v) => std::env::set_var("ROSENLAB_CACHE_DIR", v),
            None => std::env::remove_var("ROSENLAB_CACHE_DIR"),
        }
    }
}
