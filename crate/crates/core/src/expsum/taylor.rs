//! Taylor approximation of `h·n^γ` around `n0` by a polynomial in `ℓ = n − n0`.

use alloc::vec::Vec;

use super::ExpSumError;
use crate::nilseq::PolynomialPhase;

pub const MAX_TAYLOR_DEGREE: u32 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct TaylorPhase {
    /// `Q(ℓ) = h Σ_{i<k} binom(γ, i) n0^{γ−i} ℓ^i`, monomial basis in `ℓ`.
    pub q: PolynomialPhase<f64>,
    /// Bound on `|h (n0+ℓ)^γ − Q(ℓ)|` for `|ℓ| ≤ L`.
    pub error_bound: f64,
    /// The Lagrange-remainder part of `error_bound`.
    pub remainder: f64,
    /// The part of `error_bound` covering rounded coefficients.
    pub rounding: f64,
}

/// Expands `h·n^γ` to order `k` around `n0`, valid for `|n − n0| ≤ L`.
///
/// With `ξ` between `n0` and `n0 + ℓ` and `L ≤ n0/2`, the remainder
/// `binom(γ,k) ξ^{γ−k} ℓ^k` is at most `|binom(γ,k)| n0^{γ−k} L^k 2^{|γ|+k}`.
/// Each stored coefficient carries a relative error below `(2i+8)·2^-52`,
/// which adds `Σ_i |c_i| L^i (2i+8) 2^-52`.
pub fn taylor_phase(h: f64, gamma: f64, n0: u64, l: u64, k: u32) -> Result<TaylorPhase, ExpSumError> {
    if !gamma.is_finite() || gamma == libm::round(gamma) {
        return Err(ExpSumError::InvalidArgument("γ must be finite and non-integer"));
    }
    if l == 0 || n0 < 2 * l {
        return Err(ExpSumError::InvalidArgument("need n0 ≥ 2L ≥ 2"));
    }
    if k == 0 || k > MAX_TAYLOR_DEGREE {
        return Err(ExpSumError::InvalidArgument("need 1 ≤ k ≤ 64"));
    }
    let n0f = n0 as f64;
    let lf = l as f64;
    let mut binom = 1.0f64;
    let mut coeffs = Vec::with_capacity(k as usize);
    let mut rounding = 0.0;
    for i in 0..k {
        let c = h * binom * libm::pow(n0f, gamma - i as f64);
        rounding += libm::fabs(c) * libm::pow(lf, i as f64) * (2.0 * i as f64 + 8.0) * f64::EPSILON;
        coeffs.push(c);
        binom *= (gamma - i as f64) / (i as f64 + 1.0);
    }
    // `binom` now holds binom(γ, k).
    let remainder = libm::fabs(h)
        * libm::fabs(binom)
        * libm::pow(n0f, gamma - k as f64)
        * libm::pow(lf, k as f64)
        * libm::pow(2.0, libm::fabs(gamma) + k as f64)
        * (1.0 + 1e-12);
    let error_bound = remainder + rounding;
    if !(error_bound <= 0.5) {
        return Err(ExpSumError::DegreeTooSmall { bound: error_bound });
    }
    let q = PolynomialPhase::monomial(coeffs).map_err(|_| ExpSumError::InvalidArgument("degree too large"))?;
    Ok(TaylorPhase {
        q,
        error_bound,
        remainder,
        rounding,
    })
}
