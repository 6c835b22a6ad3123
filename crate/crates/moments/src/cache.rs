//! Persistent cache of per-zero derivative jets.
//!
//! One binary file per evaluation key (precision, jet order and the
//! Euler–Maclaurin overrides), holding `(γ, ζ(ρ), …, ζ^(K)(ρ))` records in
//! table order. Values are stored as raw mantissa words, so a warm run
//! reproduces a cold one bit for bit. A record is only used when its `γ`
//! matches the requested ordinate exactly; the first mismatch ends the
//! usable prefix.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use zeta_moments_core::zeta::EvalConfig;
use zeta_moments_core::{Complex, Real};

use crate::error::{AppError, Result};

const MAGIC: &[u8; 8] = b"ZMJETS1\0";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheKey {
    pub precision_bits: usize,
    pub order: usize,
    pub em_terms: Option<usize>,
    pub bernoulli_terms: Option<usize>,
}

impl CacheKey {
    pub fn new(cfg: &EvalConfig, order: usize) -> Self {
        CacheKey {
            precision_bits: cfg.precision_bits,
            order,
            em_terms: cfg.em_terms,
            bernoulli_terms: cfg.bernoulli_terms,
        }
    }

    fn file_name(&self) -> String {
        let opt = |o: Option<usize>| o.map_or_else(|| "auto".to_string(), |n| n.to_string());
        format!(
            "jets-p{}-o{}-n{}-b{}.bin",
            self.precision_bits,
            self.order,
            opt(self.em_terms),
            opt(self.bernoulli_terms)
        )
    }
}

#[derive(Clone, Debug)]
pub struct JetCache {
    dir: PathBuf,
}

impl JetCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        JetCache { dir: dir.into() }
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    /// Cached jets for the longest prefix of `ordinates` present on disk.
    pub fn load(&self, key: &CacheKey, ordinates: &[Real]) -> Result<Vec<Vec<Complex>>> {
        let path = self.path(key);
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(AppError::io(path, e)),
        };
        let bad = |reason: &str| AppError::Format {
            path: path.clone(),
            reason: format!("jet cache: {reason}"),
        };
        let mut r = &bytes[..];
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic).map_err(|_| bad("truncated header"))?;
        if &magic != MAGIC {
            return Err(bad("not a jet cache file"));
        }
        let prec = read_u32(&mut r).map_err(|_| bad("truncated header"))? as usize;
        let order = read_u32(&mut r).map_err(|_| bad("truncated header"))? as usize;
        if prec != key.precision_bits || order != key.order {
            return Err(bad("header does not match its file name"));
        }
        let mut out = Vec::new();
        for g in ordinates {
            // A short final record (interrupted write) just ends the prefix.
            let Ok(stored) = read_real(&mut r, prec) else { break };
            if stored.to_raw() != g.with_prec(prec).to_raw() {
                break;
            }
            let mut jet = Vec::with_capacity(order + 1);
            for _ in 0..=order {
                let (Ok(re), Ok(im)) = (read_real(&mut r, prec), read_real(&mut r, prec)) else {
                    return Ok(out);
                };
                jet.push(Complex::new(re, im));
            }
            out.push(jet);
        }
        Ok(out)
    }

    /// Replaces the cache file with these records (atomically, via rename).
    pub fn store(&self, key: &CacheKey, ordinates: &[Real], jets: &[Vec<Complex>]) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| AppError::io(&self.dir, e))?;
        let path = self.path(key);
        let mut buf = Vec::with_capacity(64 + jets.len() * (key.order + 1) * 80);
        buf.extend_from_slice(MAGIC);
        buf.extend_from_slice(&(key.precision_bits as u32).to_le_bytes());
        buf.extend_from_slice(&(key.order as u32).to_le_bytes());
        for (g, jet) in ordinates.iter().zip(jets) {
            write_real(&mut buf, &g.with_prec(key.precision_bits));
            for z in jet {
                write_real(&mut buf, &z.re);
                write_real(&mut buf, &z.im);
            }
        }
        let tmp = path.with_extension("bin.tmp");
        let mut f = fs::File::create(&tmp).map_err(|e| AppError::io(&tmp, e))?;
        f.write_all(&buf).map_err(|e| AppError::io(&tmp, e))?;
        drop(f);
        fs::rename(&tmp, &path).map_err(|e| AppError::io(&path, e))
    }
}

fn read_u32(r: &mut &[u8]) -> io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn write_real(buf: &mut Vec<u8>, x: &Real) {
    let (neg, exp, words) = x.to_raw();
    buf.push(neg as u8);
    buf.extend_from_slice(&exp.to_le_bytes());
    buf.extend_from_slice(&(words.len() as u32).to_le_bytes());
    for w in words {
        buf.extend_from_slice(&w.to_le_bytes());
    }
}

fn read_real(r: &mut &[u8], prec: usize) -> io::Result<Real> {
    let mut sign = [0u8; 1];
    r.read_exact(&mut sign)?;
    let exp = read_u32(r)? as i32;
    let n = read_u32(r)? as usize;
    if n > 1 << 16 {
        return Err(io::Error::new(io::ErrorKind::InvalidData, "implausible mantissa length"));
    }
    let mut words = Vec::with_capacity(n);
    for _ in 0..n {
        let mut b = [0u8; 8];
        r.read_exact(&mut b)?;
        words.push(u64::from_le_bytes(b));
    }
    Ok(Real::from_raw(sign[0] != 0, exp, &words, prec))
}

/// Default cache directory: `$ZETA_MOMENTS_CACHE`, else `.zeta-moments-cache`
/// in the working directory.
pub fn default_dir() -> PathBuf {
    std::env::var_os("ZETA_MOMENTS_CACHE").map_or_else(|| Path::new(".zeta-moments-cache").to_path_buf(), PathBuf::from)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(prec: usize) -> (Vec<Real>, Vec<Vec<Complex>>) {
        let g: Vec<Real> = [14.134725, 21.02204, 25.010858].iter().map(|x| Real::from_f64(*x, prec)).collect();
        let jets = g
            .iter()
            .map(|x| vec![Complex::new(x.recip(), -x), Complex::zero(prec), Complex::new(x.sqrt(), x.square())])
            .collect();
        (g, jets)
    }

    #[test]
    fn bitwise_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = JetCache::new(dir.path());
        let key = CacheKey::new(&EvalConfig::new(128), 2);
        let (g, jets) = sample(128);
        assert!(cache.load(&key, &g).unwrap().is_empty());
        cache.store(&key, &g, &jets).unwrap();
        let back = cache.load(&key, &g).unwrap();
        assert_eq!(back.len(), 3);
        for (a, b) in back.iter().flatten().zip(jets.iter().flatten()) {
            assert_eq!(a.re.to_raw(), b.re.to_raw());
            assert_eq!(a.im.to_raw(), b.im.to_raw());
        }
    }

    #[test]
    fn prefix_matching() {
        let dir = tempfile::tempdir().unwrap();
        let cache = JetCache::new(dir.path());
        let key = CacheKey::new(&EvalConfig::new(128), 2);
        let (g, jets) = sample(128);
        cache.store(&key, &g[..2], &jets[..2]).unwrap();
        assert_eq!(cache.load(&key, &g).unwrap().len(), 2);
        let mut other = g.clone();
        other[1] = Real::from_f64(21.5, 128);
        assert_eq!(cache.load(&key, &other).unwrap().len(), 1);
        // different key, different file
        assert!(cache.load(&CacheKey::new(&EvalConfig::new(192), 2), &g).unwrap().is_empty());
        // truncated file: usable prefix only
        let p = cache.path(&key);
        let bytes = fs::read(&p).unwrap();
        fs::write(&p, &bytes[..bytes.len() - 5]).unwrap();
        assert_eq!(cache.load(&key, &g).unwrap().len(), 1);
        fs::write(&p, b"garbage!").unwrap();
        assert_eq!(cache.load(&key, &g).unwrap_err().exit_code(), 2);
    }
}
