//! Van der Corput's second-derivative estimate and the Erdős–Turán
//! inequality as executable checks.

use super::{exp_sum_with, ExpSumError, PhaseFunction};
use crate::executor::Executor;
use crate::numeric::{e, frac, Neumaier};

const CURVATURE_SAMPLES: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VdcReport {
    /// `|Σ_{X < n ≤ X+Y} e(f(n))|`.
    pub lhs: f64,
    /// `YΔ^{1/2} + Δ^{-1/2}`.
    pub rhs: f64,
    pub ratio: f64,
}

/// Measures `|Σ e(f(n))| / (YΔ^{1/2} + Δ^{-1/2})` over `X < n ≤ X + Y` after
/// checking `Δ/4 ≤ |f''| ≤ 4Δ` at sampled points of `[X, X+Y]`.
pub fn vdc_check<E: Executor>(exec: &E, f: &PhaseFunction, x: u64, y: u64, delta: f64) -> Result<VdcReport, ExpSumError> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(ExpSumError::CurvatureAssumptionFailed {
            x: x as f64,
            value: f.second_derivative(x as f64),
            delta,
        });
    }
    if y == 0 || x == 0 {
        return Err(ExpSumError::InvalidArgument("need X ≥ 1 and Y ≥ 1"));
    }
    for i in 0..=CURVATURE_SAMPLES {
        let t = x as f64 + y as f64 * i as f64 / CURVATURE_SAMPLES as f64;
        let v = libm::fabs(f.second_derivative(t));
        if !(v >= delta / 4.0 && v <= 4.0 * delta) {
            return Err(ExpSumError::CurvatureAssumptionFailed { x: t, value: v, delta });
        }
    }
    let s = exp_sum_with(exec, |n| f.term(n), x as i64 + 1, (x + y) as i64)?;
    let lhs = s.norm();
    let rhs = y as f64 * libm::sqrt(delta) + 1.0 / libm::sqrt(delta);
    Ok(VdcReport { lhs, rhs, ratio: lhs / rhs })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtReport {
    /// `|#{n : u_n ∈ I} − |I| N|`.
    pub lhs: f64,
    /// `N/(J+1) + 3 Σ_{j≤J} |Σ_n e(j u_n)| / j`.
    pub rhs: f64,
}

/// Relative slack for rounding in the trigonometric sums.
pub const ET_TOLERANCE: f64 = 1e-9;

/// Checks the Erdős–Turán inequality for `points` (taken mod 1) and the arc
/// `I = [a, b)` with `0 ≤ b − a ≤ 1`, read modulo 1.
pub fn erdos_turan_check(points: &[f64], interval: (f64, f64), j_max: u32) -> Result<EtReport, ExpSumError> {
    let (a, b) = interval;
    let len = b - a;
    if j_max == 0 {
        return Err(ExpSumError::InvalidArgument("J must be at least 1"));
    }
    if !(0.0..=1.0).contains(&len) {
        return Err(ExpSumError::InvalidArgument("interval length must lie in [0, 1]"));
    }
    let n = points.len() as f64;
    let count = if len >= 1.0 {
        points.len()
    } else {
        points.iter().filter(|&&u| frac(u - a) < len).count()
    };
    let lhs = libm::fabs(count as f64 - len * n);
    let mut acc = Neumaier::new();
    for j in 1..=j_max {
        let mut re = Neumaier::new();
        let mut im = Neumaier::new();
        for &u in points {
            let z = e(frac(j as f64 * frac(u)));
            re.add(z.re);
            im.add(z.im);
        }
        acc.add(libm::hypot(re.total(), im.total()) / j as f64);
    }
    let rhs = n / (j_max as f64 + 1.0) + 3.0 * acc.total();
    if lhs > rhs + ET_TOLERANCE * n.max(1.0) {
        return Err(ExpSumError::InequalityViolated { lhs, rhs });
    }
    Ok(EtReport { lhs, rhs })
}
