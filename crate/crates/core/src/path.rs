//! Simulated sample paths and their binary container format.
//!
//! Files use a fixed 56-byte little-endian header followed by one record per
//! path. Layout:
//!
//! ```text
//! magic      8 bytes  b"RLPATH01"
//! version    u32      1
//! generator  u32      0 = hermite2-fgn, 1 = injected
//! n_paths    u32      number of path records
//! reserved   u32      0
//! n_steps    u64      time steps per path (values per path = n_steps + 1)
//! hurst      f64
//! dt         f64      uniform time step
//! seed       u64      master seed for the whole file
//! ```
//!
//! Each record is the per-path stream seed (`u64`) followed by
//! `n_steps + 1` values (`f64`), starting with the anchored zero.

use crate::{CoreError, Hurst};
use serde::{Deserialize, Serialize};
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

const PATH_MAGIC: &[u8; 8] = b"RLPATH01";
const PATH_VERSION: u32 = 1;

/// How a path's underlying noise was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeneratorKind {
    /// Quadratic functional of circulant-embedded fractional Gaussian noise.
    #[serde(rename = "hermite2-fgn")]
    Hermite2Fgn,
    /// Values supplied by the caller (fixtures, negative controls).
    #[serde(rename = "injected")]
    Injected,
}

impl GeneratorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorKind::Hermite2Fgn => "hermite2-fgn",
            GeneratorKind::Injected => "injected",
        }
    }

    fn to_tag(self) -> u32 {
        match self {
            GeneratorKind::Hermite2Fgn => 0,
            GeneratorKind::Injected => 1,
        }
    }

    fn from_tag(tag: u32) -> Option<Self> {
        match tag {
            0 => Some(GeneratorKind::Hermite2Fgn),
            1 => Some(GeneratorKind::Injected),
            _ => None,
        }
    }
}

impl std::str::FromStr for GeneratorKind {
    type Err = CoreError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hermite2-fgn" => Ok(GeneratorKind::Hermite2Fgn),
            "injected" => Ok(GeneratorKind::Injected),
            other => Err(CoreError::UnknownGenerator {
                tag: other.to_string(),
            }),
        }
    }
}

/// One simulated path on a uniform time grid, anchored at zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    hurst: Hurst,
    dt: f64,
    values: Vec<f64>,
    seed: u64,
    generator: GeneratorKind,
}

impl PathSample {
    pub fn new(
        hurst: Hurst,
        dt: f64,
        values: Vec<f64>,
        seed: u64,
        generator: GeneratorKind,
    ) -> Result<Self, CoreError> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(CoreError::InvalidTimeStep { value: dt });
        }
        if values.len() < 2 {
            return Err(CoreError::PathTooShort { len: values.len() });
        }
        if values[0] != 0.0 {
            return Err(CoreError::PathNotAnchored { value: values[0] });
        }
        for &v in &values {
            if !v.is_finite() {
                return Err(CoreError::NonFinite {
                    what: "path value",
                    value: v,
                });
            }
        }
        Ok(PathSample {
            hurst,
            dt,
            values,
            seed,
            generator,
        })
    }

    pub fn hurst(&self) -> Hurst {
        self.hurst
    }

    /// Uniform spacing of the time grid.
    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Values at `0, dt, 2 dt, ...`; the first entry is always zero.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn generator(&self) -> GeneratorKind {
        self.generator
    }

    /// Number of time steps (one less than the number of values).
    pub fn n_steps(&self) -> usize {
        self.values.len() - 1
    }

    /// Final time `n_steps * dt`.
    pub fn horizon(&self) -> f64 {
        self.n_steps() as f64 * self.dt
    }

    /// Value at grid index `i`.
    pub fn at(&self, i: usize) -> f64 {
        self.values[i]
    }
}

/// Writes a homogeneous batch of paths (shared hurst, dt, length, generator).
pub fn write_paths(
    path: &Path,
    samples: &[PathSample],
    master_seed: u64,
) -> Result<(), CoreError> {
    let first = samples.first().ok_or(CoreError::CorruptFile {
        path: path.display().to_string(),
    })?;
    let n_steps = first.n_steps();
    for s in samples {
        if s.n_steps() != n_steps || s.dt != first.dt || s.hurst != first.hurst {
            return Err(CoreError::CorruptFile {
                path: path.display().to_string(),
            });
        }
    }
    let mut w = BufWriter::new(std::fs::File::create(path)?);
    w.write_all(PATH_MAGIC)?;
    w.write_all(&PATH_VERSION.to_le_bytes())?;
    w.write_all(&first.generator.to_tag().to_le_bytes())?;
    w.write_all(&(samples.len() as u32).to_le_bytes())?;
    w.write_all(&0u32.to_le_bytes())?;
    w.write_all(&(n_steps as u64).to_le_bytes())?;
    w.write_all(&first.hurst.get().to_le_bytes())?;
    w.write_all(&first.dt.to_le_bytes())?;
    w.write_all(&master_seed.to_le_bytes())?;
    for s in samples {
        w.write_all(&s.seed.to_le_bytes())?;
        for &v in &s.values {
            w.write_all(&v.to_le_bytes())?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Reads a path batch written by [`write_paths`]; returns the samples and the
/// master seed recorded in the header.
pub fn read_paths(path: &Path) -> Result<(Vec<PathSample>, u64), CoreError> {
    let name = path.display().to_string();
    let mut r = BufReader::new(std::fs::File::open(path)?);

    let mut magic = [0u8; 8];
    r.read_exact(&mut magic)?;
    if &magic != PATH_MAGIC {
        return Err(CoreError::BadMagic {
            path: name,
            expected: "RLPATH01",
        });
    }
    let version = read_u32(&mut r)?;
    if version != PATH_VERSION {
        return Err(CoreError::BadVersion {
            path: name,
            version,
        });
    }
    let generator_tag = read_u32(&mut r)?;
    let generator =
        GeneratorKind::from_tag(generator_tag).ok_or_else(|| CoreError::UnknownGenerator {
            tag: generator_tag.to_string(),
        })?;
    let n_paths = read_u32(&mut r)? as usize;
    let _reserved = read_u32(&mut r)?;
    let n_steps = read_u64(&mut r)? as usize;
    let hurst = Hurst::new(read_f64(&mut r)?)?;
    let dt = read_f64(&mut r)?;
    let master_seed = read_u64(&mut r)?;

    let mut samples = Vec::with_capacity(n_paths);
    for _ in 0..n_paths {
        let seed = read_u64(&mut r)?;
        let mut values = Vec::with_capacity(n_steps + 1);
        for _ in 0..=n_steps {
            values.push(read_f64(&mut r)?);
        }
        samples.push(PathSample::new(hurst, dt, values, seed, generator)?);
    }
    Ok((samples, master_seed))
}

fn read_u32(r: &mut impl Read) -> Result<u32, CoreError> {
    let mut buf = [0u8; 4];
    r.read_exact(&mut buf)?;
    Ok(u32::from_le_bytes(buf))
}

fn read_u64(r: &mut impl Read) -> Result<u64, CoreError> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(u64::from_le_bytes(buf))
}

fn read_f64(r: &mut impl Read) -> Result<f64, CoreError> {
    let mut buf = [0u8; 8];
    r.read_exact(&mut buf)?;
    Ok(f64::from_le_bytes(buf))
}
