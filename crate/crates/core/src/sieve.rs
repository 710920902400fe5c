//! Segmented sieve of Eratosthenes producing primality and `Λ(n)`, plus the
//! `W`-trick modulus and its reduced residues.

use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use thiserror::Error;

use crate::executor::Executor;

pub const DEFAULT_SEGMENT_SIZE: u64 = 1 << 22;
pub const MAX_SIEVE_HI: u64 = 1 << 50;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SieveError {
    #[error("sieve bound {hi} exceeds the configured limit {limit}")]
    CapacityExceeded { hi: u64, limit: u64 },
    #[error("invalid range [{lo}, {hi}]")]
    InvalidRange { lo: u64, hi: u64 },
    #[error("segment of {len} values exceeds the configured size {size}")]
    SegmentTooLarge { len: u64, size: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    pub segment_size: u64,
    pub max_hi: u64,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_size: DEFAULT_SEGMENT_SIZE,
            max_hi: MAX_SIEVE_HI,
        }
    }
}

impl SieveConfig {
    fn validate(&self, lo: u64, hi: u64) -> Result<(), SieveError> {
        if lo == 0 || lo > hi {
            return Err(SieveError::InvalidRange { lo, hi });
        }
        let limit = self.max_hi.min(MAX_SIEVE_HI);
        if hi > limit {
            return Err(SieveError::CapacityExceeded { hi, limit });
        }
        Ok(())
    }

    /// Splits `[lo, hi]` into consecutive segments of at most `segment_size`.
    pub fn segment_bounds(&self, lo: u64, hi: u64) -> Result<Vec<(u64, u64)>, SieveError> {
        self.validate(lo, hi)?;
        let size = self.segment_size.max(64);
        let mut out = Vec::new();
        let mut a = lo;
        loop {
            let b = a.saturating_add(size - 1).min(hi);
            out.push((a, b));
            if b == hi {
                break;
            }
            a = b + 1;
        }
        Ok(out)
    }
}

/// `⌊√n⌋`.
pub fn isqrt(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r.checked_mul(r).is_none_or(|v| v > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|v| v <= n) {
        r += 1;
    }
    r
}

/// All primes `≤ n` by a plain odd-only sieve.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let half = (n - 1) / 2; // index i ↔ 2i + 1 for i ≥ 1
    let mut composite = vec![false; half + 1];
    let mut out = vec![2u64];
    let mut i = 1;
    while i <= half {
        if !composite[i] {
            let p = 2 * i + 1;
            out.push(p as u64);
            let mut j = (p * p - 1) / 2;
            while j <= half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    out
}

/// Bit `r` is set when `gcd(r, 30) = 1`.
const WHEEL30: u32 = {
    let mut m = 0u32;
    let mut r = 0;
    while r < 30 {
        if r % 2 != 0 && r % 3 != 0 && r % 5 != 0 {
            m |= 1 << r;
        }
        r += 1;
    }
    m
};

/// `Λ` and primality for every integer of `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    lo: u64,
    hi: u64,
    lambda_values: Vec<f64>,
    prime_flags: Vec<u64>,
}

impl Segment {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `Λ(n)`; zero outside the segment's range is *not* implied, so callers
    /// must stay inside `[lo, hi]`.
    #[inline]
    pub fn lambda(&self, n: u64) -> f64 {
        self.lambda_values[(n - self.lo) as usize]
    }

    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        let i = n - self.lo;
        self.prime_flags[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn lambda_values(&self) -> &[f64] {
        &self.lambda_values
    }

    /// Little-endian packed primality bits; bit `i` describes `lo + i`.
    pub fn prime_words(&self) -> &[u64] {
        &self.prime_flags
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (self.lo..=self.hi).filter(move |&n| self.is_prime(n))
    }

    pub fn prime_count(&self) -> u64 {
        self.prime_flags.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Rebuilds a segment from its primality bits (for example, read back
    /// from a cache). `base` must contain every prime `p` with `p² ≤ hi`.
    pub fn from_prime_words(lo: u64, hi: u64, words: Vec<u64>, base: &[u64]) -> Result<Self, SieveError> {
        if lo == 0 || lo > hi {
            return Err(SieveError::InvalidRange { lo, hi });
        }
        let len = (hi - lo + 1) as usize;
        if words.len() != len.div_ceil(64) {
            return Err(SieveError::InvalidRange { lo, hi });
        }
        let mut seg = Segment {
            lo,
            hi,
            lambda_values: vec![0.0; len],
            prime_flags: words,
        };
        seg.fill_lambda(base);
        Ok(seg)
    }

    fn fill_lambda(&mut self, base: &[u64]) {
        let (lo, hi) = (self.lo, self.hi);
        for (w, &word) in self.prime_flags.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as u64;
                bits &= bits - 1;
                let n = lo + w as u64 * 64 + b;
                self.lambda_values[(n - lo) as usize] = libm::log(n as f64);
            }
        }
        for &p in base {
            let Some(mut q) = p.checked_mul(p) else { break };
            if q > hi {
                break;
            }
            let lp = libm::log(p as f64);
            loop {
                if q >= lo {
                    self.lambda_values[(q - lo) as usize] = lp;
                }
                match q.checked_mul(p) {
                    Some(v) if v <= hi => q = v,
                    _ => break,
                }
            }
        }
    }
}

/// Sieves `[lo, hi]` with the default configuration.
pub fn sieve_segment(lo: u64, hi: u64) -> Result<Segment, SieveError> {
    sieve_segment_with(&SieveConfig::default(), lo, hi)
}

pub fn sieve_segment_with(cfg: &SieveConfig, lo: u64, hi: u64) -> Result<Segment, SieveError> {
    cfg.validate(lo, hi)?;
    let base = primes_up_to(isqrt(hi));
    sieve_with_base(cfg, lo, hi, &base)
}

/// Sieves one segment given the base primes up to `√hi`.
pub fn sieve_with_base(cfg: &SieveConfig, lo: u64, hi: u64, base: &[u64]) -> Result<Segment, SieveError> {
    cfg.validate(lo, hi)?;
    let len = hi - lo + 1;
    if len > cfg.segment_size.max(64) {
        return Err(SieveError::SegmentTooLarge {
            len,
            size: cfg.segment_size,
        });
    }
    let mut words = vec![0u64; (len as usize).div_ceil(64)];
    let mut r = (lo % 30) as u32;
    for i in 0..len as usize {
        if WHEEL30 >> r & 1 == 1 {
            words[i / 64] |= 1 << (i % 64);
        }
        r = if r == 29 { 0 } else { r + 1 };
    }
    for p in [2u64, 3, 5] {
        if (lo..=hi).contains(&p) {
            let i = p - lo;
            words[(i / 64) as usize] |= 1 << (i % 64);
        }
    }
    if lo == 1 {
        words[0] &= !1;
    }
    for &p in base.iter().filter(|&&p| p >= 7) {
        let sq = p * p;
        if sq > hi {
            break;
        }
        let mut m = sq.max(lo.div_ceil(p) * p);
        if m % 2 == 0 {
            m += p;
        }
        let step = 2 * p;
        while m <= hi {
            let i = m - lo;
            words[(i / 64) as usize] &= !(1 << (i % 64));
            m += step;
        }
    }
    Segment::from_prime_words(lo, hi, words, base)
}

/// `Λ` and primality over `[lo, hi]` in one flat table, built segment by
/// segment.
#[derive(Debug, Clone)]
pub struct LambdaTable {
    lo: u64,
    hi: u64,
    lambda: Vec<f64>,
    primes: Vec<u64>,
}

impl LambdaTable {
    pub fn build<E: Executor>(exec: &E, lo: u64, hi: u64, cfg: &SieveConfig) -> Result<Self, SieveError> {
        let bounds = cfg.segment_bounds(lo, hi)?;
        let base = primes_up_to(isqrt(hi));
        let segs = exec.map_indexed(bounds.len(), |i| sieve_with_base(cfg, bounds[i].0, bounds[i].1, &base));
        let segs = segs.into_iter().collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_segments(&segs))
    }

    /// Concatenates consecutive segments (as produced by
    /// [`SieveConfig::segment_bounds`]).
    pub fn from_segments(segs: &[Segment]) -> Self {
        let lo = segs.first().map_or(1, |s| s.lo);
        let hi = segs.last().map_or(0, |s| s.hi);
        let mut lambda = Vec::with_capacity((hi + 1).saturating_sub(lo) as usize);
        let mut primes = Vec::new();
        for s in segs {
            debug_assert_eq!(s.lo, lo + lambda.len() as u64);
            lambda.extend_from_slice(&s.lambda_values);
            primes.extend(s.primes());
        }
        LambdaTable { lo, hi, lambda, primes }
    }

    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    /// `Λ(n)`, with `Λ(n) = 0` for `n ≤ 0`.
    #[inline]
    pub fn lambda(&self, n: i64) -> Option<f64> {
        if n <= 0 {
            return Some(0.0);
        }
        let n = n as u64;
        if n < self.lo || n > self.hi {
            return None;
        }
        Some(self.lambda[(n - self.lo) as usize])
    }

    pub fn values(&self) -> &[f64] {
        &self.lambda
    }

    /// The primes of the range, increasing.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn is_prime(&self, n: u64) -> bool {
        self.primes.binary_search(&n).is_ok()
    }
}

/// `W = ∏_{p ≤ w} p` with its reduced residue system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WTrick {
    w: u64,
    modulus: u64,
    phi: u64,
}

/// Builds the `W`-trick data for `2 ≤ w ≤ 30`.
pub fn build_wtrick(w: u64) -> Result<WTrick, SieveError> {
    if !(2..=30).contains(&w) {
        return Err(SieveError::InvalidRange { lo: w, hi: w });
    }
    let mut modulus = 1u64;
    let mut phi = 1u64;
    for p in primes_up_to(w) {
        modulus *= p;
        phi *= p - 1;
    }
    Ok(WTrick { w, modulus, phi })
}

impl WTrick {
    pub fn w(&self) -> u64 {
        self.w
    }

    /// `W`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// `φ(W)`, the number of residues.
    pub fn phi(&self) -> u64 {
        self.phi
    }

    /// `φ(W)/W`.
    pub fn density(&self) -> f64 {
        self.phi as f64 / self.modulus as f64
    }

    pub fn is_residue(&self, b: u64) -> bool {
        (1..=self.modulus).contains(&b) && b.gcd(&self.modulus) == 1
    }

    /// The `b ∈ [1, W]` with `gcd(b, W) = 1`, increasing. Generated on demand:
    /// for `w ≥ 23` there are more than 10^8 of them.
    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        (1..=self.modulus).filter(move |b| b.gcd(&self.modulus) == 1)
    }
}
