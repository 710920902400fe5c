//! Membership in the Piatetski-Shapiro sequence `PS_{1/γ} = {⌊m^{1/γ}⌋ : m ≥ 1}`
//! and the normalized weight `Λ_γ(n) = (n^{1-γ}/γ)·Λ(n)·1_{n ∈ PS_{1/γ}}`.
//!
//! `n ∈ PS_{1/γ}` iff the half-open interval `[n^γ, (n+1)^γ)` contains an
//! integer `m`; that `m` is the witness with `⌊m^{1/γ}⌋ = n`. Both rounding
//! steps are certified: in exact-rational mode through integer roots, in
//! certified-real mode through interval arithmetic whose precision doubles
//! until the floors are decided.

pub mod certified;
mod roots;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_integer::Integer;
use thiserror::Error;

use crate::executor::Executor;

/// Smallest allowed precision cap in certified-real mode.
pub const MIN_PRECISION_BITS: u32 = 128;
/// Default precision cap in certified-real mode.
pub const DEFAULT_PRECISION_CAP: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PsError {
    #[error("invalid exponent: {0}")]
    InvalidGamma(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error(
        "precision exhausted at {bits} bits deciding {base}^({num}/{den}) ≈ {approx}"
    )]
    PrecisionExhausted {
        base: u64,
        num: u64,
        den: u64,
        approx: f64,
        bits: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvalMode {
    /// `γ = a/b`; every floor is decided with integer `b`-th roots.
    ExactRational,
    /// `γ` is still an exact rational, but floors are decided by interval
    /// evaluation of `exp(γ log n)` with a precision cap.
    CertifiedReal { precision_cap: u32 },
}

/// The exponent `γ ∈ (0, 1)` of `PS_{1/γ}` together with its evaluation mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PsParameter {
    num: u64,
    den: u64,
    mode: EvalMode,
}

impl PsParameter {
    pub fn exact(a: u64, b: u64) -> Result<Self, PsError> {
        let (num, den) = reduce(a, b)?;
        Ok(PsParameter {
            num,
            den,
            mode: EvalMode::ExactRational,
        })
    }

    /// Certified-real mode for the rational `num/den`.
    pub fn certified(num: u64, den: u64, precision_cap: u32) -> Result<Self, PsError> {
        if precision_cap < MIN_PRECISION_BITS {
            return Err(PsError::InvalidArgument("precision cap must be at least 128 bits"));
        }
        let (num, den) = reduce(num, den)?;
        Ok(PsParameter {
            num,
            den,
            mode: EvalMode::CertifiedReal { precision_cap },
        })
    }

    /// Certified-real mode for the exact binary value of `gamma`.
    pub fn from_f64(gamma: f64, precision_cap: u32) -> Result<Self, PsError> {
        if !(gamma > 0.0 && gamma < 1.0) {
            return Err(PsError::InvalidGamma(format!("{gamma} is not in (0, 1)")));
        }
        let bits = gamma.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let mant = (bits & ((1u64 << 52) - 1)) | (1u64 << 52);
        // gamma = mant · 2^(exp - 1075)
        let shift = 1075 - exp;
        let tz = mant.trailing_zeros() as i64;
        let shift = shift - tz;
        if shift > 63 {
            return Err(PsError::InvalidGamma(format!("{gamma} needs a denominator above 2^63")));
        }
        Self::certified(mant >> tz, 1u64 << shift, precision_cap)
    }

    /// Parses `"a/b"` (exact-rational mode) or a decimal such as `"0.95"`
    /// (certified-real mode with the exact decimal value).
    pub fn parse(s: &str, precision_cap: u32) -> Result<Self, PsError> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let a: u64 = a.trim().parse().map_err(|_| PsError::InvalidGamma(s.into()))?;
            let b: u64 = b.trim().parse().map_err(|_| PsError::InvalidGamma(s.into()))?;
            return Self::exact(a, b);
        }
        let (num, den) = parse_decimal(s)?;
        Self::certified(num, den, precision_cap)
    }

    pub fn gamma(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `c = 1/γ`.
    pub fn c(&self) -> f64 {
        self.den as f64 / self.num as f64
    }

    pub fn ratio(&self) -> (u64, u64) {
        (self.num, self.den)
    }

    pub fn mode(&self) -> EvalMode {
        self.mode
    }

    pub fn is_exact(&self) -> bool {
        self.mode == EvalMode::ExactRational
    }

    pub fn describe(&self) -> String {
        match self.mode {
            EvalMode::ExactRational => format!("{}/{} (exact-rational)", self.num, self.den),
            EvalMode::CertifiedReal { precision_cap } => format!(
                "{}/{} (certified-real, cap {} bits)",
                self.num, self.den, precision_cap
            ),
        }
    }

    /// `⌈n^γ⌉`.
    pub fn ceil_pow_gamma(&self, n: u64) -> Result<(u64, u32), PsError> {
        self.round_pow(n, self.num, self.den, Rounding::Ceil)
    }

    /// `⌊m^{1/γ}⌋`.
    pub fn floor_pow_c(&self, m: u64) -> Result<(u64, u32), PsError> {
        self.round_pow(m, self.den, self.num, Rounding::Floor)
    }

    fn round_pow(&self, base: u64, num: u64, den: u64, r: Rounding) -> Result<(u64, u32), PsError> {
        match self.mode {
            EvalMode::ExactRational => {
                let (fl, exact, bits) = roots::floor_pow_exact(base, num, den);
                let v = match r {
                    Rounding::Floor => fl,
                    Rounding::Ceil if exact => fl,
                    Rounding::Ceil => fl + 1,
                };
                Ok((v, bits))
            }
            EvalMode::CertifiedReal { precision_cap } => {
                certified_round(base, num, den, r, CertifyOptions::with_cap(precision_cap))
            }
        }
    }
}

fn reduce(a: u64, b: u64) -> Result<(u64, u64), PsError> {
    if a == 0 || b == 0 || a >= b {
        return Err(PsError::InvalidGamma(format!("{a}/{b} is not in (0, 1)")));
    }
    let g = a.gcd(&b);
    Ok((a / g, b / g))
}

fn parse_decimal(s: &str) -> Result<(u64, u64), PsError> {
    let bad = || PsError::InvalidGamma(s.into());
    let (int, frac) = s.split_once('.').ok_or_else(bad)?;
    if !(int.is_empty() || int == "0") || frac.is_empty() || frac.len() > 18 {
        return Err(bad());
    }
    if !frac.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let num: u64 = frac.parse().map_err(|_| bad())?;
    Ok((num, 10u64.pow(frac.len() as u32)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rounding {
    Floor,
    Ceil,
}

/// Tuning knobs for certified-real rounding.
#[derive(Debug, Clone, Copy)]
pub struct CertifyOptions {
    pub start_bits: u32,
    pub precision_cap: u32,
    /// Try a guarded `f64` evaluation before any multiprecision work.
    pub fast_path: bool,
}

impl CertifyOptions {
    pub fn with_cap(precision_cap: u32) -> Self {
        CertifyOptions {
            start_bits: MIN_PRECISION_BITS,
            precision_cap,
            fast_path: true,
        }
    }
}

/// Relative guard band of the `f64` filter; libm's `pow` is accurate to
/// about one ulp, and rounding `num/den` costs at most `2^-53·|log base|`.
const FAST_PATH_GUARD: f64 = 1.0 / (1u64 << 40) as f64;

/// Rounds `base^(num/den)` to an integer in certified-real mode.
/// Returns the value and the precision (in bits) at which it was decided.
pub fn certified_round(
    base: u64,
    num: u64,
    den: u64,
    rounding: Rounding,
    opts: CertifyOptions,
) -> Result<(u64, u32), PsError> {
    if base == 0 || den == 0 {
        return Err(PsError::InvalidArgument("base and denominator must be positive"));
    }
    if base == 1 || num == 0 {
        return Ok((1, 0));
    }
    if opts.fast_path {
        let v = libm::pow(base as f64, num as f64 / den as f64);
        if v < 4.0e15 {
            let margin = v * FAST_PATH_GUARD + FAST_PATH_GUARD;
            let nearest = libm::round(v);
            if libm::fabs(v - nearest) > margin {
                let out = match rounding {
                    Rounding::Floor => libm::floor(v),
                    Rounding::Ceil => libm::ceil(v),
                };
                return Ok((out as u64, 53));
            }
        }
    }
    let mut bits = opts.start_bits.max(MIN_PRECISION_BITS);
    let mut last_approx = 0.0;
    while bits <= opts.precision_cap {
        let iv = certified::pow_ratio(base, num, den, bits + 32);
        let (a, b) = match rounding {
            Rounding::Floor => iv.floor_bounds(),
            Rounding::Ceil => iv.ceil_bounds(),
        };
        if a == b {
            let v: u64 = a.try_into().map_err(|_| PsError::InvalidArgument("result exceeds u64"))?;
            return Ok((v, bits));
        }
        // The enclosure straddles an integer k = ⌊hi⌋; decide the tie exactly
        // when the integers involved are of manageable size.
        let (_, k) = iv.floor_bounds();
        if let Ok(k) = u64::try_from(k) {
            let size = num.saturating_mul(64 - base.leading_zeros() as u64)
                .max(den.saturating_mul(64 - k.leading_zeros() as u64));
            if size <= 1 << 16 && roots::is_exact_power(base, num, k, den) {
                return Ok((k, bits));
            }
        }
        last_approx = iv.approx_f64();
        bits = bits.saturating_mul(2);
    }
    Err(PsError::PrecisionExhausted {
        base,
        num,
        den,
        approx: last_approx,
        bits: opts.precision_cap,
    })
}

/// Result of a membership test. `witness_m` is present exactly when `member`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub n: u64,
    pub member: bool,
    pub witness_m: Option<u64>,
    pub bits_used: u32,
}

/// Decides `n ∈ PS_{1/γ}`.
pub fn ps_indicator(n: u64, p: &PsParameter) -> Result<MembershipCertificate, PsError> {
    if n == 0 {
        return Err(PsError::InvalidArgument("n must be at least 1"));
    }
    let (m, b1) = p.ceil_pow_gamma(n)?;
    let (back, b2) = p.floor_pow_c(m)?;
    let member = back == n;
    Ok(MembershipCertificate {
        n,
        member,
        witness_m: member.then_some(m),
        bits_used: b1.max(b2),
    })
}

/// The `m`-range whose images `⌊m^{1/γ}⌋` are exactly `PS ∩ [lo, hi]`.
pub fn preimage_range(lo: u64, hi: u64, p: &PsParameter) -> Result<(u64, u64), PsError> {
    if lo == 0 || lo > hi {
        return Err(PsError::InvalidArgument("need 1 ≤ lo ≤ hi"));
    }
    let (m_lo, _) = p.ceil_pow_gamma(lo)?;
    let (m_end, _) = p.ceil_pow_gamma(hi + 1)?;
    Ok((m_lo, m_end - 1))
}

/// Number of elements of `PS ∩ [lo, hi]` (the images are pairwise distinct).
pub fn ps_count(lo: u64, hi: u64, p: &PsParameter) -> Result<u64, PsError> {
    let (a, b) = preimage_range(lo, hi, p)?;
    Ok((b + 1).saturating_sub(a))
}

/// `PS ∩ [lo, hi]`, increasing.
pub fn ps_enumerate(lo: u64, hi: u64, p: &PsParameter) -> Result<Vec<u64>, PsError> {
    ps_enumerate_with(&crate::Sequential, lo, hi, p)
}

const ENUM_CHUNK: u64 = 1 << 15;

/// [`ps_enumerate`] with the `m`-range split into fixed chunks.
pub fn ps_enumerate_with<E: Executor>(
    exec: &E,
    lo: u64,
    hi: u64,
    p: &PsParameter,
) -> Result<Vec<u64>, PsError> {
    let (m_lo, m_hi) = preimage_range(lo, hi, p)?;
    if m_hi < m_lo {
        return Ok(Vec::new());
    }
    let total = m_hi - m_lo + 1;
    let chunks = total.div_ceil(ENUM_CHUNK) as usize;
    let parts = exec.map_indexed(chunks, |i| {
        let a = m_lo + i as u64 * ENUM_CHUNK;
        let b = (a + ENUM_CHUNK - 1).min(m_hi);
        (a..=b)
            .map(|m| p.floor_pow_c(m).map(|(v, _)| v))
            .collect::<Result<Vec<u64>, PsError>>()
    });
    let mut out = Vec::with_capacity(total as usize);
    for part in parts {
        out.extend(part?);
    }
    Ok(out)
}

/// `Λ_γ(n)` given `vm = Λ(n)`.
pub fn lambda_gamma(n: u64, p: &PsParameter, vm: f64) -> Result<f64, PsError> {
    if n == 0 {
        return Err(PsError::InvalidArgument("n must be at least 1"));
    }
    if vm == 0.0 {
        return Ok(0.0);
    }
    if !ps_indicator(n, p)?.member {
        return Ok(0.0);
    }
    Ok(lambda_gamma_factor(n, p.gamma()) * vm)
}

/// `n^{1-γ}/γ`.
#[inline]
pub fn lambda_gamma_factor(n: u64, gamma: f64) -> f64 {
    libm::pow(n as f64, 1.0 - gamma) / gamma
}

/// Membership bitset for `PS ∩ [1, n_max]`.
#[derive(Debug, Clone)]
pub struct PsSet {
    n_max: u64,
    words: Vec<u64>,
    count: u64,
}

impl PsSet {
    /// Enumerates `PS ∩ [1, n_max]` in batches of chunks so that only the
    /// bitset, not the member list, is ever held in full.
    pub fn build<E: Executor>(exec: &E, n_max: u64, p: &PsParameter) -> Result<Self, PsError> {
        let mut set = PsSet {
            n_max,
            words: alloc::vec![0u64; (n_max as usize + 64) / 64],
            count: 0,
        };
        if n_max == 0 {
            return Ok(set);
        }
        let (m_lo, m_hi) = preimage_range(1, n_max, p)?;
        let chunks = (m_hi + 1).saturating_sub(m_lo).div_ceil(ENUM_CHUNK);
        const BATCH: u64 = 256;
        let mut first = 0;
        while first < chunks {
            let batch = BATCH.min(chunks - first);
            let parts = exec.map_indexed(batch as usize, |i| {
                let a = m_lo + (first + i as u64) * ENUM_CHUNK;
                let b = (a + ENUM_CHUNK - 1).min(m_hi);
                (a..=b)
                    .map(|m| p.floor_pow_c(m).map(|(v, _)| v))
                    .collect::<Result<Vec<u64>, PsError>>()
            });
            for part in parts {
                for n in part? {
                    set.words[(n / 64) as usize] |= 1 << (n % 64);
                    set.count += 1;
                }
            }
            first += batch;
        }
        Ok(set)
    }

    pub fn from_members(n_max: u64, members: &[u64]) -> Self {
        let mut words = alloc::vec![0u64; (n_max as usize + 64) / 64];
        let mut count = 0;
        for &n in members {
            if n <= n_max {
                words[(n / 64) as usize] |= 1 << (n % 64);
                count += 1;
            }
        }
        PsSet { n_max, words, count }
    }

    #[inline]
    pub fn contains(&self, n: u64) -> bool {
        n >= 1 && n <= self.n_max && self.words[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }
}
