//! `e(x) = exp(2πix)` with the argument measured in turns.

use super::dd::Dd;
use num_complex::Complex64;

/// Fractional part in `[0, 1)`.
#[inline]
pub fn frac(x: f64) -> f64 {
    let f = x - libm::floor(x);
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

/// `‖x‖_{R/Z}`, the distance from `x` to the nearest integer.
#[inline]
pub fn dist_to_int(x: f64) -> f64 {
    libm::fabs(x - libm::round(x))
}

/// The sawtooth `ψ(x) = {x} − 1/2`.
#[inline]
pub fn sawtooth(x: f64) -> f64 {
    frac(x) - 0.5
}

/// `(sin 2πx, cos 2πx)`, exact at multiples of a quarter turn.
pub fn sincos_turns(x: f64) -> (f64, f64) {
    let t = x - libm::round(x); // [-1/2, 1/2], exact
    let u = 4.0 * t;
    let q = libm::round(u);
    let r = u - q; // [-1/2, 1/2], exact
    let angle = r * core::f64::consts::FRAC_PI_2;
    let (s, c) = (libm::sin(angle), libm::cos(angle));
    match (q as i64).rem_euclid(4) {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

/// `e(x)`. Arguments beyond 2^40 in magnitude have already lost their
/// fractional bits as `f64`; use [`e_dd`] for phases that large.
#[inline]
pub fn e(x: f64) -> Complex64 {
    let (s, c) = sincos_turns(x);
    Complex64::new(c, s)
}

/// `e(x)` for a double-double phase, reducing modulo 1 before the trig call.
#[inline]
pub fn e_dd(x: Dd) -> Complex64 {
    if libm::fabs(x.hi) < 1.0 {
        e(x.hi + x.lo)
    } else {
        e(x.frac())
    }
}
