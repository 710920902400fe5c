//! Vaaler's trigonometric approximation of the sawtooth `ψ(x) = {x} − 1/2`.
//!
//! `ψ*(x) = Σ_{1≤|h|≤H} a_h e(hx)` with `a_h = i φ(h/(H+1)) / (2πh)` and
//! `φ(t) = πt(1−|t|) cot(πt) + |t|`; the error is bounded by the scaled Fejér
//! kernel `Σ_{|h|≤H} b_h e(hx)`, `b_h = (1 − |h|/(H+1)) / (2H+2)`.

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ExpSumError;
use crate::numeric::{sawtooth, sincos_turns};

pub const MAX_H: u32 = 1 << 16;
/// Absolute slack for the pointwise check; at `x ∈ Z` the inequality is an
/// equality (`|ψ(0) − ψ*(0)| = 1/2 = Σ b_h`).
pub const SAWTOOTH_TOLERANCE: f64 = 1e-12;
const RANDOM_POINTS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct SawtoothApprox {
    h: u32,
    /// `a_1, …, a_H`; `a_{−h}` is the conjugate.
    a: Vec<Complex64>,
    /// `b_0, …, b_H`; `b_{−h} = b_h`.
    b: Vec<f64>,
    /// `max_h |h a_h|`.
    pub c_a: f64,
    /// `max_h H b_h`.
    pub c_b: f64,
}

fn vaaler_phi(t: f64) -> f64 {
    let at = libm::fabs(t);
    let pt = PI * t;
    pt * (1.0 - at) * libm::cos(pt) / libm::sin(pt) + at
}

pub fn vaaler_approx(h: u32) -> Result<SawtoothApprox, ExpSumError> {
    if h == 0 || h > MAX_H {
        return Err(ExpSumError::InvalidArgument("H must lie in [1, 2^16]"));
    }
    let hp1 = (h + 1) as f64;
    let a: Vec<Complex64> = (1..=h)
        .map(|k| Complex64::new(0.0, vaaler_phi(k as f64 / hp1) / (2.0 * PI * k as f64)))
        .collect();
    let b: Vec<f64> = (0..=h).map(|k| (1.0 - k as f64 / hp1) / (2.0 * hp1)).collect();
    let c_a = a.iter().enumerate().map(|(i, z)| (i + 1) as f64 * z.norm()).fold(0.0, f64::max);
    let c_b = b.iter().map(|v| h as f64 * v).fold(0.0, f64::max);
    Ok(SawtoothApprox { h, a, b, c_a, c_b })
}

impl SawtoothApprox {
    pub fn degree(&self) -> u32 {
        self.h
    }

    /// `a_h` for `1 ≤ |h| ≤ H` (zero otherwise).
    pub fn a(&self, h: i64) -> Complex64 {
        let k = h.unsigned_abs() as usize;
        if k == 0 || k > self.h as usize {
            return Complex64::new(0.0, 0.0);
        }
        if h > 0 {
            self.a[k - 1]
        } else {
            self.a[k - 1].conj()
        }
    }

    /// `b_h` for `|h| ≤ H` (zero otherwise).
    pub fn b(&self, h: i64) -> f64 {
        let k = h.unsigned_abs() as usize;
        self.b.get(k).copied().unwrap_or(0.0)
    }

    pub fn max_b(&self) -> f64 {
        self.b.iter().copied().fold(0.0, f64::max)
    }

    /// `ψ*(x) = 2 Re Σ_{h=1}^H a_h e(hx)` and the majorant
    /// `b_0 + 2 Σ_{h=1}^H b_h cos(2πhx)`.
    pub fn eval(&self, x: f64) -> (f64, f64) {
        let mut approx = 0.0;
        let mut major = self.b[0];
        for k in 1..=self.h as usize {
            let (s, c) = sincos_turns(k as f64 * x);
            let a = self.a[k - 1];
            approx += 2.0 * (a.re * c - a.im * s);
            major += 2.0 * self.b[k] * c;
        }
        (approx, major)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SawtoothReport {
    pub points: usize,
    /// `min (rhs − lhs)` over all points.
    pub min_slack: f64,
    pub max_abs_error: f64,
    pub mean_abs_error: f64,
    /// Smallest value of the majorant (never negative for a Fejér kernel).
    pub min_majorant: f64,
}

/// Checks `|ψ(x) − ψ*(x)| ≤ Σ b_h e(hx)` on `grid_size` equispaced points of
/// `[0, 1)` and 100 random ones drawn from `seed`.
pub fn check_sawtooth(s: &SawtoothApprox, grid_size: usize, seed: u64) -> Result<SawtoothReport, ExpSumError> {
    if grid_size < 1000 {
        return Err(ExpSumError::InvalidArgument("grid size must be at least 1000"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = (0..RANDOM_POINTS).map(|_| (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64);
    let grid = (0..grid_size).map(|i| i as f64 / grid_size as f64);
    let mut report = SawtoothReport {
        points: 0,
        min_slack: f64::INFINITY,
        max_abs_error: 0.0,
        mean_abs_error: 0.0,
        min_majorant: f64::INFINITY,
    };
    let mut total = 0.0;
    for x in grid.chain(random) {
        let (approx, major) = s.eval(x);
        let lhs = libm::fabs(sawtooth(x) - approx);
        if lhs > major + SAWTOOTH_TOLERANCE {
            return Err(ExpSumError::ApproximationViolation { x, lhs, rhs: major });
        }
        report.points += 1;
        report.min_slack = report.min_slack.min(major - lhs);
        report.max_abs_error = report.max_abs_error.max(lhs);
        report.min_majorant = report.min_majorant.min(major);
        total += lhs;
    }
    report.mean_abs_error = total / report.points as f64;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_case() {
        let s = vaaler_approx(1).unwrap();
        assert!(s.a(1).norm() > 0.0 && s.a(1).norm() <= 1.0);
        assert_eq!(s.a(-1), s.a(1).conj());
        assert_eq!(s.a(2), Complex64::new(0.0, 0.0));
        assert!(s.b(0) <= s.c_b && s.b(1) <= s.c_b);
    }

    #[test]
    fn coefficient_constants() {
        let s = vaaler_approx(64).unwrap();
        assert!(s.c_a <= 1.0);
        for h in 1..=64i64 {
            assert_eq!(s.a(-h), s.a(h).conj());
            assert_eq!(s.a(h).re, 0.0);
        }
        assert!(s.max_b() <= 4.0 / 64.0);
    }

    #[test]
    fn endpoint_is_tight() {
        let s = vaaler_approx(8).unwrap();
        let (approx, major) = s.eval(0.0);
        assert!(approx.abs() < 1e-15);
        assert!((major - 0.5).abs() < 1e-15);
        assert_eq!(sawtooth(0.0), -0.5);
    }

    #[test]
    fn small_grid_passes() {
        let s = vaaler_approx(8).unwrap();
        let r = check_sawtooth(&s, 2000, 1).unwrap();
        assert_eq!(r.points, 2100);
        assert!(r.min_majorant >= -1e-15);
    }

    #[test]
    fn corrupted_approximation_is_caught() {
        let mut s = vaaler_approx(8).unwrap();
        s.b.iter_mut().for_each(|b| *b *= 0.5);
        assert!(matches!(
            check_sawtooth(&s, 1000, 0),
            Err(ExpSumError::ApproximationViolation { .. })
        ));
    }
}
