//! Double-double arithmetic (an unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`).
//!
//! Used wherever a phase is large enough that a plain `f64` would lose its
//! fractional part: `h·n^γ` for big `h`, polynomial phases at large `n`, and
//! Heisenberg coordinates after many steps.

use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

const LN2: Dd = Dd {
    hi: core::f64::consts::LN_2,
    lo: 2.319_046_813_846_299_6e-17,
};

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    /// Exact conversion of any 64-bit integer.
    pub fn from_i64(n: i64) -> Self {
        let hi = n as f64;
        // `n - hi` is exact in i128 and fits in 11 bits of an f64 mantissa.
        let lo = (n as i128 - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    pub fn from_u64(n: u64) -> Self {
        let hi = n as f64;
        let lo = (n as i128 - hi as i128) as f64;
        let (hi, lo) = quick_two_sum(hi, lo);
        Dd { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let e = e + self.lo * b;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn add_f64(self, b: f64) -> Self {
        let (s, e) = two_sum(self.hi, b);
        let e = e + self.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - Dd::from_f64(b).mul_f64(q1);
        let q2 = r.hi / b;
        let r = r - Dd::from_f64(b).mul_f64(q2);
        let q3 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }

    pub fn div(self, b: Dd) -> Self {
        let q1 = self.hi / b.hi;
        let r = self - b.mul_f64(q1);
        let q2 = r.hi / b.hi;
        let r = r - b.mul_f64(q2);
        let q3 = r.hi / b.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Dd { hi, lo }.add_f64(q3)
    }

    pub fn floor(self) -> Self {
        let hi = libm::floor(self.hi);
        if hi == self.hi {
            let lo = libm::floor(self.lo);
            let (hi, lo) = quick_two_sum(hi, lo);
            Dd { hi, lo }
        } else {
            Dd { hi, lo: 0.0 }
        }
    }

    /// `self mod 1` in `[0, 1)`.
    pub fn frac(self) -> f64 {
        let r = self - self.floor();
        let f = r.hi + r.lo;
        if f >= 1.0 {
            f - 1.0
        } else if f < 0.0 {
            f + 1.0
        } else {
            f
        }
    }

    /// `e^self`, accurate to roughly 2^-100 relative.
    pub fn exp(self) -> Self {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ONE;
        }
        let k = libm::round(self.hi / LN2.hi);
        let r = self - LN2.mul_f64(k);
        // Shrink the argument by 2^10 and square back up.
        let r = r.mul_f64(1.0 / 1024.0);
        let mut term = r;
        let mut sum = r;
        for i in 2..=16 {
            term = (term * r).div_f64(i as f64);
            sum = sum + term;
            if libm::fabs(term.hi) < 1e-36 {
                break;
            }
        }
        // sum = e^r - 1; square via (1+s)^2 - 1 = s(2+s) to keep precision.
        for _ in 0..10 {
            sum = sum * sum.add_f64(2.0);
        }
        let v = sum.add_f64(1.0);
        let scale = libm::ldexp(1.0, k as i32);
        Dd {
            hi: v.hi * scale,
            lo: v.lo * scale,
        }
    }

    /// Natural logarithm of a positive value (one Newton step on `exp`).
    pub fn ln(self) -> Self {
        debug_assert!(self.hi > 0.0);
        let y0 = Dd::from_f64(libm::log(self.hi));
        let t = self * (-y0).exp();
        y0 + t.add_f64(-1.0)
    }

    /// `n^gamma` for a positive integer `n`.
    pub fn pow_int(n: u64, gamma: f64) -> Self {
        if n == 1 || gamma == 0.0 {
            return Dd::ONE;
        }
        (Dd::from_u64(n).ln().mul_f64(gamma)).exp()
    }

    /// `x^gamma` for a positive double-double.
    pub fn powf(self, gamma: f64) -> Self {
        if gamma == 0.0 {
            return Dd::ONE;
        }
        (self.ln().mul_f64(gamma)).exp()
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, b: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let e = e + t;
        let (s, e) = quick_two_sum(s, e);
        let e = e + f;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, b: Dd) -> Dd {
        self + (-b)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, b: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            o => o,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_conversion_is_exact() {
        let n = (1i64 << 60) + 12345;
        let d = Dd::from_i64(n);
        assert_eq!(d.hi as i128 + d.lo as i128, n as i128);
    }

    #[test]
    fn frac_of_large_product_keeps_low_bits() {
        // (2^40 + 0.25) * 3 = 3·2^40 + 0.75
        let x = Dd::from_f64(1099511627776.0).add_f64(0.25).mul_f64(3.0);
        assert!((x.frac() - 0.75).abs() < 1e-20);
    }

    #[test]
    fn exp_ln_round_trip() {
        for &x in &[0.5, 1.0, 2.0, 10.0, 12345.678, 1e12] {
            let d = Dd::from_f64(x);
            let back = d.ln().exp();
            assert!(((back - d).to_f64() / x).abs() < 1e-28, "x={x}");
        }
    }

    #[test]
    fn pow_matches_integer_powers() {
        // 3^(2) via pow_int with non-trivial path
        let v = Dd::pow_int(3, 2.0);
        assert!((v - Dd::from_f64(9.0)).to_f64().abs() < 1e-28);
        let v = Dd::pow_int(1 << 20, 0.5);
        assert!((v - Dd::from_f64(1024.0)).to_f64().abs() < 1e-25);
    }
}
