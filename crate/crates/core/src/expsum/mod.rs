//! Exponential sums and the analytic inequalities built on them: the Vaaler
//! sawtooth approximation, van der Corput's second-derivative bound, the
//! Erdős–Turán inequality, Taylor approximation of `h·n^γ`, the progression
//! supremum `|·|*`, and the weighted discorrelation experiment.

mod discorrelation;
mod inequalities;
mod phase;
mod sawtooth;
mod star;
mod taylor;

pub use discorrelation::{discorrelation, discorrelation_with, frac_concentration, Discorrelation, Twist};
pub use inequalities::{erdos_turan_check, vdc_check, EtReport, VdcReport};
pub use phase::{PhaseFunction, PhaseKind};
pub use sawtooth::{check_sawtooth, vaaler_approx, SawtoothApprox, SawtoothReport};
pub use star::{star_norm, StarMode, StarNormResult};
pub use taylor::{taylor_phase, TaylorPhase};

use alloc::vec::Vec;
use num_complex::Complex64;
use thiserror::Error;

use crate::executor::Executor;
use crate::numeric::{pairwise_reduce, ComplexAccumulator};
use crate::ps_core::PsError;
use crate::ErrorKind;

pub const MAX_SUM_LENGTH: u64 = 1 << 34;
/// Terms per compensated chunk; fixed so results never depend on threading.
pub const SUM_CHUNK: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExpSumError {
    #[error("sawtooth inequality violated at x = {x}: {lhs} > {rhs}")]
    ApproximationViolation { x: f64, lhs: f64, rhs: f64 },
    #[error("|f''({x})| = {value} is outside [Δ/4, 4Δ] for Δ = {delta}")]
    CurvatureAssumptionFailed { x: f64, value: f64, delta: f64 },
    #[error("Erdős–Turán inequality violated: {lhs} > {rhs}")]
    InequalityViolated { lhs: f64, rhs: f64 },
    #[error("Taylor error bound {bound} exceeds 1/2; raise the degree")]
    DegreeTooSmall { bound: f64 },
    #[error("range of {0} terms exceeds 2^34")]
    RangeTooLong(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error(transparent)]
    Ps(#[from] PsError),
}

impl ExpSumError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            ExpSumError::ApproximationViolation { .. }
            | ExpSumError::CurvatureAssumptionFailed { .. }
            | ExpSumError::InequalityViolated { .. } => ErrorKind::Assertion,
            ExpSumError::Ps(PsError::PrecisionExhausted { .. }) => ErrorKind::Precision,
            _ => ErrorKind::InvalidInput,
        }
    }
}

fn add_c(a: Complex64, b: Complex64) -> Complex64 {
    a + b
}

/// `Σ_{lo ≤ n ≤ hi} f(n)`; empty when `lo > hi`.
pub fn exp_sum<F>(f: F, lo: i64, hi: i64) -> Result<Complex64, ExpSumError>
where
    F: Fn(i64) -> Complex64 + Sync + Send,
{
    exp_sum_with(&crate::Sequential, f, lo, hi)
}

/// [`exp_sum`] on an executor. Each chunk of [`SUM_CHUNK`] terms is summed
/// with Neumaier compensation and the chunk totals are combined pairwise.
pub fn exp_sum_with<E, F>(exec: &E, f: F, lo: i64, hi: i64) -> Result<Complex64, ExpSumError>
where
    E: Executor,
    F: Fn(i64) -> Complex64 + Sync + Send,
{
    if lo > hi {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let len = (hi as i128 - lo as i128 + 1) as u64;
    if len > MAX_SUM_LENGTH {
        return Err(ExpSumError::RangeTooLong(len));
    }
    let chunks = len.div_ceil(SUM_CHUNK) as usize;
    let partial: Vec<Complex64> = exec.map_indexed(chunks, |i| {
        let a = lo + (i as u64 * SUM_CHUNK) as i64;
        let b = (a + SUM_CHUNK as i64 - 1).min(hi);
        let mut acc = ComplexAccumulator::new();
        for n in a..=b {
            acc.add(f(n));
        }
        acc.total()
    });
    Ok(pairwise_reduce(&partial, Complex64::new(0.0, 0.0), add_c))
}
