use alloc::vec::Vec;

use super::{lambda_r_with, MajorantError, MajorantParams, SpfTable};
use crate::executor::Executor;
use crate::ps_core::{PsError, PsSet};

/// `ν` tabulated on `Z_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct NuTable {
    values: Vec<f64>,
}

const NU_SHARD: usize = 1 << 14;

impl NuTable {
    /// `ν(n) = (1/γ)(φ(W)/W)(Wn+b)^{1−γ} ρ(Wn+b) 1_{Wn+b ∈ PS}` inside the
    /// window, `1` outside; `ρ = Λ_R² / log R`.
    pub fn build<E: Executor>(exec: &E, params: &MajorantParams) -> Result<Self, MajorantError> {
        let top = params.lift(params.n - 1);
        let spf = SpfTable::new(top);
        let ps = PsSet::build(exec, top, &params.gamma)?;
        let gamma = params.gamma.gamma();
        let density = params.wtrick.density();
        let log_r = libm::log(params.r);
        let lo = params.window_lo();
        let n = params.n as usize;
        let shards = n.div_ceil(NU_SHARD);
        let parts = exec.map_indexed(shards, |s| {
            let a = s * NU_SHARD;
            let b = (a + NU_SHARD).min(n);
            (a..b)
                .map(|i| {
                    let i = i as u64;
                    if i < lo {
                        return 1.0;
                    }
                    let m = params.lift(i);
                    if !ps.contains(m) {
                        return 0.0;
                    }
                    let lr = lambda_r_with(&spf, m, params.r);
                    let rho = lr * lr / log_r;
                    density * libm::pow(m as f64, 1.0 - gamma) * rho / gamma
                })
                .collect::<Vec<f64>>()
        });
        Ok(NuTable {
            values: parts.concat(),
        })
    }

    /// `ν ≡ 1` on `Z_N`.
    pub fn trivial(n: u64) -> Self {
        NuTable {
            values: alloc::vec![1.0; n as usize],
        }
    }

    pub fn from_values(values: Vec<f64>) -> Self {
        NuTable { values }
    }

    pub fn modulus(&self) -> u64 {
        self.values.len() as u64
    }

    #[inline]
    pub fn get(&self, n: u64) -> f64 {
        self.values[n as usize]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        let acc: crate::numeric::Neumaier = self.values.iter().copied().collect();
        acc.total() / self.values.len() as f64
    }
}

/// `ν(n)` for a single `n ∈ Z_N` (tabulates nothing; for spot checks).
pub fn nu(n: u64, params: &MajorantParams) -> Result<f64, MajorantError> {
    if n >= params.n {
        return Err(MajorantError::InvalidParams("n must lie in Z_N".into()));
    }
    if !params.in_window(n) {
        return Ok(1.0);
    }
    let m = params.lift(n);
    if !crate::ps_core::ps_indicator(m, &params.gamma)?.member {
        return Ok(0.0);
    }
    let lr = super::lambda_r(m, params.r)?;
    let gamma = params.gamma.gamma();
    Ok(params.wtrick.density() * libm::pow(m as f64, 1.0 - gamma) * (lr * lr / libm::log(params.r)) / gamma)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MajorizationReport {
    /// Number of `n` with `Wn+b ∈ PS ∩ P` that were checked.
    pub checked: u64,
    pub min_ratio: f64,
    pub c: f64,
}

/// Checks `ν(n) ≥ c (φ(W)/W)(Wn+b)^{1−γ} log R` for every `n ∈ [lo, hi]` with
/// `Wn + b ∈ PS ∩ P`.
pub fn majorization_check(
    params: &MajorantParams,
    table: &NuTable,
    range: (u64, u64),
    c: f64,
) -> Result<MajorizationReport, MajorantError> {
    majorization_check_with(params, |n| table.get(n), range, c)
}

/// [`majorization_check`] against an arbitrary `ν`.
pub fn majorization_check_with<F: Fn(u64) -> f64>(
    params: &MajorantParams,
    nu: F,
    range: (u64, u64),
    c: f64,
) -> Result<MajorizationReport, MajorantError> {
    let (lo, hi) = range;
    let mut report = MajorizationReport {
        checked: 0,
        min_ratio: f64::INFINITY,
        c,
    };
    if lo > hi {
        return Ok(report);
    }
    if !params.in_window(lo) || !params.in_window(hi) {
        return Err(MajorantError::InvalidParams("range must lie inside the window".into()));
    }
    let spf = SpfTable::new(params.lift(hi));
    let gamma = params.gamma.gamma();
    let base = params.wtrick.density() * libm::log(params.r);
    for n in lo..=hi {
        let m = params.lift(n);
        if !spf.is_prime(m) {
            continue;
        }
        let member = crate::ps_core::ps_indicator(m, &params.gamma).map_err(|e: PsError| MajorantError::Ps(e))?;
        if !member.member {
            continue;
        }
        let ratio = nu(n) / (base * libm::pow(m as f64, 1.0 - gamma));
        report.checked += 1;
        report.min_ratio = report.min_ratio.min(ratio);
        if !(ratio >= c) {
            return Err(MajorantError::MajorizationViolation { n, ratio, c });
        }
    }
    Ok(report)
}
