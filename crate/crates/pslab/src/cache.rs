//! On-disk cache of sieved segments.
//!
//! One file per segment `[lo, hi]`: a 16-byte header (`PSLB0001`, a `u32`
//! format version, four reserved bytes), then `lo` and `hi` as `u64`, then the
//! primality bitset as `u64` words. Everything is little-endian. `Λ` is
//! rebuilt from the bitset on load.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use pslab_core::sieve::{isqrt, primes_up_to, sieve_with_base, LambdaTable, Segment, SieveConfig, SieveError};
use pslab_core::Executor;

pub const CACHE_ENV: &str = "PSLAB_CACHE_DIR";
pub const MAGIC: &[u8; 8] = b"PSLB0001";
pub const FORMAT_VERSION: u32 = 1;
const HEADER_LEN: usize = 16;

#[derive(Debug, Clone)]
pub struct SieveCache {
    dir: PathBuf,
}

impl SieveCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        SieveCache { dir: dir.into() }
    }

    /// The cache named by `PSLAB_CACHE_DIR`, if set and nonempty.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Self::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, lo: u64, hi: u64) -> PathBuf {
        self.dir.join(format!("segment_{lo}_{hi}.pslb"))
    }

    /// Reads a segment back; `None` on a miss or on any malformed file.
    pub fn load(&self, lo: u64, hi: u64, base: &[u64]) -> Option<Segment> {
        let bytes = fs::read(self.path_for(lo, hi)).ok()?;
        let words = decode(&bytes, lo, hi)?;
        Segment::from_prime_words(lo, hi, words, base).ok()
    }

    /// Writes through a temporary file and a rename so readers never see a
    /// partial segment.
    pub fn store(&self, seg: &Segment) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(seg.lo(), seg.hi());
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&encode(seg))?;
            f.sync_all()?;
        }
        fs::rename(tmp, path)
    }
}

pub fn encode(seg: &Segment) -> Vec<u8> {
    let words = seg.prime_words();
    let mut out = Vec::with_capacity(HEADER_LEN + 16 + 8 * words.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&[0; 4]);
    out.extend_from_slice(&seg.lo().to_le_bytes());
    out.extend_from_slice(&seg.hi().to_le_bytes());
    for w in words {
        out.extend_from_slice(&w.to_le_bytes());
    }
    out
}

fn read_u64(b: &[u8]) -> u64 {
    u64::from_le_bytes(b.try_into().unwrap())
}

pub fn decode(bytes: &[u8], lo: u64, hi: u64) -> Option<Vec<u64>> {
    if bytes.len() < HEADER_LEN + 16 || &bytes[..8] != MAGIC {
        return None;
    }
    if u32::from_le_bytes(bytes[8..12].try_into().unwrap()) != FORMAT_VERSION {
        return None;
    }
    if read_u64(&bytes[16..24]) != lo || read_u64(&bytes[24..32]) != hi || lo == 0 || lo > hi {
        return None;
    }
    let body = &bytes[32..];
    let n_words = ((hi - lo + 1) as usize).div_ceil(64);
    if body.len() != 8 * n_words {
        return None;
    }
    Some(body.chunks_exact(8).map(read_u64).collect())
}

/// `Λ` on `[1, hi]`, reusing cached segments and storing new ones. Store
/// failures are reported on stderr and otherwise ignored.
pub fn lambda_table<E: Executor>(exec: &E, hi: u64, cache: Option<&SieveCache>) -> Result<LambdaTable, SieveError> {
    let cfg = SieveConfig::default();
    let Some(cache) = cache else {
        return LambdaTable::build(exec, 1, hi, &cfg);
    };
    let bounds = cfg.segment_bounds(1, hi)?;
    let base = primes_up_to(isqrt(hi));
    let segs = exec.map_indexed(bounds.len(), |i| {
        let (a, b) = bounds[i];
        if let Some(seg) = cache.load(a, b, &base) {
            return Ok((seg, false));
        }
        sieve_with_base(&cfg, a, b, &base).map(|s| (s, true))
    });
    let mut out = Vec::with_capacity(segs.len());
    for r in segs {
        let (seg, fresh) = r?;
        if fresh {
            if let Err(e) = cache.store(&seg) {
                eprintln!("warning: could not write sieve cache in {}: {e}", cache.dir().display());
            }
        }
        out.push(seg);
    }
    Ok(LambdaTable::from_segments(&out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pslab_core::sieve::sieve_segment;

    #[test]
    fn round_trip_and_rejection() {
        let seg = sieve_segment(1000, 5000).unwrap();
        let bytes = encode(&seg);
        assert_eq!(&bytes[..8], b"PSLB0001");
        assert_eq!(decode(&bytes, 1000, 5000).unwrap(), seg.prime_words());
        assert!(decode(&bytes, 1000, 5001).is_none());
        let mut bad = bytes.clone();
        bad[8] = 2;
        assert!(decode(&bad, 1000, 5000).is_none());
        assert!(decode(&bytes[..bytes.len() - 1], 1000, 5000).is_none());
    }

    #[test]
    fn cached_table_matches_fresh() {
        let dir = tempfile::tempdir().unwrap();
        let cache = SieveCache::new(dir.path());
        let seq = pslab_core::Sequential;
        let fresh = lambda_table(&seq, 100_000, None).unwrap();
        let first = lambda_table(&seq, 100_000, Some(&cache)).unwrap();
        assert!(cache.path_for(1, 100_000).exists());
        let second = lambda_table(&seq, 100_000, Some(&cache)).unwrap();
        assert_eq!(fresh.values(), first.values());
        assert_eq!(fresh.values(), second.values());
        assert_eq!(fresh.primes(), second.primes());
    }
}
