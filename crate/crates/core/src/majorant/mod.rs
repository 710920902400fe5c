//! The truncated divisor sum `Λ_R`, the majorant `ν` on `Z_N`, and empirical
//! probes of the linear forms condition.

mod linear_forms;
mod nu;
mod phase;

pub use linear_forms::{linear_forms_average, linear_forms_average_with, LinearFormsEstimate, ZnSystem, EXHAUSTIVE_LIMIT, MIN_SAMPLES};
pub use nu::{majorization_check, nu, majorization_check_with, MajorizationReport, NuTable};
pub use phase::{multi_linear_phase_sum, vandermonde_probe, PhaseSumResult, VandermondeProbe, MAX_PHASE_SUM_LENGTH};

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use thiserror::Error;

use crate::ps_core::{PsError, PsParameter};
use crate::sieve::{build_wtrick, primes_up_to, WTrick};
use crate::ErrorKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MajorantError {
    #[error("majorization fails at n = {n}: ratio {ratio} < {c}")]
    MajorizationViolation { n: u64, ratio: f64, c: f64 },
    #[error("forms {i} and {j} are not separated")]
    SeparationViolated { i: usize, j: usize },
    #[error("certified bound {bound} exceeds max |S_j| = {max}")]
    BoundViolated { max: f64, bound: f64 },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Ps(#[from] PsError),
}

impl MajorantError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            MajorantError::MajorizationViolation { .. } | MajorantError::BoundViolated { .. } => ErrorKind::Assertion,
            MajorantError::Ps(PsError::PrecisionExhausted { .. }) => ErrorKind::Precision,
            _ => ErrorKind::InvalidInput,
        }
    }
}

/// Fixed at desk scale in place of "sufficiently small".
pub const EPS0: f64 = 0.5;
/// Lower end of the window `[N^{0.9}, N]`; the `O(s0 η0)` correction is 0.
pub const WINDOW_EXPONENT: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub struct MajorantParams {
    pub n: u64,
    pub r: f64,
    pub gamma: PsParameter,
    pub wtrick: WTrick,
    pub b: u64,
    pub m: u32,
}

fn is_prime_u64(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d: &u64| d * d <= n).all(|d| n % d != 0)
}

impl MajorantParams {
    /// Validates `N` prime, `1 < R < N`, `gcd(b, W) = 1`.
    pub fn new(n: u64, r: f64, gamma: PsParameter, w: u64, b: u64, m: u32) -> Result<Self, MajorantError> {
        if !is_prime_u64(n) {
            return Err(MajorantError::InvalidParams(format!("N = {n} is not prime")));
        }
        if !(r > 1.0 && r < n as f64) {
            return Err(MajorantError::InvalidParams(format!("R = {r} is not in (1, N)")));
        }
        let wtrick = build_wtrick(w).map_err(|e| MajorantError::InvalidParams(format!("{e}")))?;
        if !wtrick.is_residue(b) {
            return Err(MajorantError::InvalidParams(format!("b = {b} is not a unit mod W = {}", wtrick.modulus())));
        }
        if m == 0 {
            return Err(MajorantError::InvalidParams("m must be positive".into()));
        }
        Ok(MajorantParams {
            n,
            r,
            gamma,
            wtrick,
            b,
            m,
        })
    }

    /// `R = N^{ε0 η0}`.
    pub fn default_r(n: u64, gamma: &PsParameter) -> f64 {
        libm::pow(n as f64, EPS0 * (1.0 - gamma.gamma()))
    }

    pub fn eta0(&self) -> f64 {
        1.0 - self.gamma.gamma()
    }

    /// `s0 = 2^{m−1} m`.
    pub fn s0(&self) -> u64 {
        (1u64 << (self.m - 1)) * self.m as u64
    }

    pub fn modulus(&self) -> u64 {
        self.wtrick.modulus()
    }

    /// `⌈N^{0.9}⌉`.
    pub fn window_lo(&self) -> u64 {
        libm::ceil(libm::pow(self.n as f64, WINDOW_EXPONENT)) as u64
    }

    pub fn in_window(&self, n: u64) -> bool {
        n >= self.window_lo() && n < self.n
    }

    /// `W n + b`.
    pub fn lift(&self, n: u64) -> u64 {
        self.modulus() * n + self.b
    }

    pub fn descriptor(&self) -> String {
        let (a, b) = self.gamma.ratio();
        format!(
            "N={};R={:e};gamma={}/{};w={};W={};b={};m={}",
            self.n,
            self.r,
            a,
            b,
            self.wtrick.w(),
            self.modulus(),
            self.b,
            self.m
        )
    }
}

/// Smallest-prime-factor table on `[0, limit]`.
#[derive(Debug, Clone)]
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn new(limit: u64) -> Self {
        let limit = limit as usize;
        let mut spf = alloc::vec![0u32; limit + 1];
        for p in primes_up_to(limit as u64) {
            let p = p as usize;
            let mut k = p;
            while k <= limit {
                if spf[k] == 0 {
                    spf[k] = p as u32;
                }
                k += p;
            }
        }
        SpfTable { spf }
    }

    pub fn limit(&self) -> u64 {
        self.spf.len() as u64 - 1
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.spf[n as usize] as u64 == n
    }

    /// Distinct prime factors of `1 ≤ n ≤ limit`.
    pub fn distinct_primes(&self, mut n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        out
    }
}

/// `Σ_{d | n, d ≤ R} μ(d) log(R/d)` given the distinct primes of `n`
/// (only those `≤ R` matter).
fn lambda_r_from_primes(primes: &[u64], r: f64) -> f64 {
    let small: Vec<u64> = primes.iter().copied().filter(|&p| (p as f64) <= r).collect();
    let log_r = libm::log(r);
    let mut acc = crate::numeric::Neumaier::new();
    // Depth-first over squarefree products, pruning once d > R.
    fn walk(small: &[u64], start: usize, d: u64, sign: f64, r: f64, log_r: f64, acc: &mut crate::numeric::Neumaier) {
        acc.add(sign * (log_r - libm::log(d as f64)));
        for i in start..small.len() {
            let Some(nd) = d.checked_mul(small[i]) else { continue };
            if nd as f64 <= r {
                walk(small, i + 1, nd, -sign, r, log_r, acc);
            }
        }
    }
    walk(&small, 0, 1, 1.0, r, log_r, &mut acc);
    acc.total()
}

/// `Λ_R(n)`, factoring `n` by trial division with the primes `≤ R`.
pub fn lambda_r(n: u64, r: f64) -> Result<f64, MajorantError> {
    if n == 0 || n > 1 << 50 {
        return Err(MajorantError::InvalidParams("need 1 ≤ n ≤ 2^50".into()));
    }
    if !(r > 1.0) {
        return Err(MajorantError::InvalidParams("need R > 1".into()));
    }
    let cap = libm::floor(r).min(n as f64) as u64;
    let primes: Vec<u64> = primes_up_to(cap).into_iter().filter(|p| n % p == 0).collect();
    Ok(lambda_r_from_primes(&primes, r))
}

/// `Λ_R(n)` using a smallest-prime-factor table that covers `n`.
pub fn lambda_r_with(spf: &SpfTable, n: u64, r: f64) -> f64 {
    lambda_r_from_primes(&spf.distinct_primes(n), r)
}
