//! Directed-rounding fixed-point interval evaluation of `base^(num/den)`.
//!
//! Values are `BigUint`s scaled by `2^prec`. Lower endpoints are always
//! rounded down and upper endpoints up, and series tails are bounded
//! explicitly, so the true value lies in `[lo, hi] / 2^prec`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// A closed interval `[lo, hi] · 2^-prec` of nonnegative reals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedInterval {
    pub lo: BigUint,
    pub hi: BigUint,
    pub prec: u32,
}

fn div_ceil(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

fn shr_ceil(a: &BigUint, bits: u32) -> BigUint {
    let q = a >> bits;
    if (&q << bits) == *a {
        q
    } else {
        q + 1u32
    }
}

impl FixedInterval {
    pub fn exact_int(v: u64, prec: u32) -> Self {
        let x = BigUint::from(v) << prec;
        FixedInterval {
            lo: x.clone(),
            hi: x,
            prec,
        }
    }

    /// `⌈lo⌉` and `⌈hi⌉` of the represented reals.
    pub fn ceil_bounds(&self) -> (BigUint, BigUint) {
        (shr_ceil(&self.lo, self.prec), shr_ceil(&self.hi, self.prec))
    }

    pub fn floor_bounds(&self) -> (BigUint, BigUint) {
        (&self.lo >> self.prec, &self.hi >> self.prec)
    }

    pub fn approx_f64(&self) -> f64 {
        let bits = self.hi.bits();
        let shift = bits.saturating_sub(60);
        let top = (&self.hi >> shift).iter_u64_digits().next().unwrap_or(0) as f64;
        libm::ldexp(top, shift as i32 - self.prec as i32)
    }
}

/// `atanh(p/q)` for `0 ≤ p/q ≤ 1/3`, at scale `2^prec`.
fn atanh_ratio(p: u128, q: u128, prec: u32) -> FixedInterval {
    if p == 0 {
        return FixedInterval {
            lo: BigUint::zero(),
            hi: BigUint::zero(),
            prec,
        };
    }
    let one = BigUint::one() << prec;
    let qb = BigUint::from(q);
    let z_lo = (BigUint::from(p) << prec) / &qb;
    let z_hi = div_ceil(&(BigUint::from(p) << prec), &qb);
    let z2_lo = (&z_lo * &z_lo) >> prec;
    let z2_hi = shr_ceil(&(&z_hi * &z_hi), prec);

    let mut pow_lo = z_lo;
    let mut pow_hi = z_hi;
    let mut sum_lo = BigUint::zero();
    let mut sum_hi = BigUint::zero();
    let mut k: u64 = 0;
    loop {
        let d = BigUint::from(2 * k + 1);
        sum_lo += &pow_lo / &d;
        sum_hi += div_ceil(&pow_hi, &d);
        pow_lo = (&pow_lo * &z2_lo) >> prec;
        pow_hi = shr_ceil(&(&pow_hi * &z2_hi), prec);
        k += 1;
        if pow_hi <= BigUint::from(2u32) {
            break;
        }
    }
    // Remaining terms: Σ_{j≥k} z^{2j+1}/(2j+1) ≤ z^{2k+1} / (1 - z²) ≤ (9/8) z^{2k+1}.
    let tail = div_ceil(&(pow_hi * 9u32), &BigUint::from(8u32)) + 1u32;
    sum_hi += tail;
    debug_assert!(sum_lo <= sum_hi && sum_hi < one);
    FixedInterval {
        lo: sum_lo,
        hi: sum_hi,
        prec,
    }
}

/// `ln 2 = 2·atanh(1/3)`.
pub fn ln2(prec: u32) -> FixedInterval {
    let a = atanh_ratio(1, 3, prec);
    FixedInterval {
        lo: a.lo << 1,
        hi: a.hi << 1,
        prec,
    }
}

/// `ln n` for `n ≥ 1`.
pub fn ln_u64(n: u64, prec: u32) -> FixedInterval {
    assert!(n >= 1);
    if n == 1 {
        return FixedInterval {
            lo: BigUint::zero(),
            hi: BigUint::zero(),
            prec,
        };
    }
    let e = 63 - n.leading_zeros();
    let pow2 = 1u64 << e;
    let l2 = ln2(prec);
    // n = 2^e · x with x ∈ [1, 2); ln x = 2 atanh((n - 2^e)/(n + 2^e)).
    let at = atanh_ratio((n - pow2) as u128, n as u128 + pow2 as u128, prec);
    FixedInterval {
        lo: l2.lo * e + (at.lo << 1),
        hi: l2.hi * e + (at.hi << 1),
        prec,
    }
}

/// `exp(y)` for a nonnegative interval `y`.
pub fn exp_nonneg(y: &FixedInterval) -> FixedInterval {
    let prec = y.prec;
    let l2 = ln2(prec);
    // y = k ln2 + r with r ≥ 0 guaranteed by rounding k down against ln2_hi.
    let k = &y.lo / &l2.hi;
    let r_lo = &y.lo - &k * &l2.hi;
    let r_hi = &y.hi - &k * &l2.lo;
    let one = BigUint::one() << prec;

    let mut term_lo = one.clone();
    let mut term_hi = one.clone();
    let mut sum_lo = one.clone();
    let mut sum_hi = one;
    let mut j: u32 = 1;
    loop {
        term_lo = ((&term_lo * &r_lo) >> prec) / j;
        term_hi = div_ceil(&shr_ceil(&(&term_hi * &r_hi), prec), &BigUint::from(j));
        sum_lo += &term_lo;
        sum_hi += &term_hi;
        j += 1;
        if term_hi <= BigUint::from(1u32) || j > 100_000 {
            break;
        }
    }
    // With r ≤ 1 the tail after term j-1 is at most 2·term_j ≤ 2·term_{j-1}.
    sum_hi += (term_hi << 1) + 1u32;
    let k: usize = k.try_into().expect("exponent fits usize");
    FixedInterval {
        lo: sum_lo << k,
        hi: sum_hi << k,
        prec,
    }
}

/// Interval enclosure of `base^(num/den)` at working precision `prec`.
pub fn pow_ratio(base: u64, num: u64, den: u64, prec: u32) -> FixedInterval {
    assert!(base >= 1 && den >= 1);
    if base == 1 || num == 0 {
        return FixedInterval::exact_int(1, prec);
    }
    let l = ln_u64(base, prec);
    let nb = BigUint::from(num);
    let db = BigUint::from(den);
    let y = FixedInterval {
        lo: (&l.lo * &nb) / &db,
        hi: div_ceil(&(&l.hi * &nb), &db),
        prec,
    };
    exp_nonneg(&y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f64(x: &BigUint, prec: u32) -> f64 {
        FixedInterval {
            lo: x.clone(),
            hi: x.clone(),
            prec,
        }
        .approx_f64()
    }

    #[test]
    fn ln2_encloses_constant() {
        let l = ln2(128);
        assert!(l.lo <= l.hi);
        assert!((to_f64(&l.lo, 128) - core::f64::consts::LN_2).abs() < 1e-16);
        assert!((&l.hi - &l.lo) < BigUint::from(1024u32));
    }

    #[test]
    fn ln_of_powers_of_two() {
        let l = ln_u64(1024, 200);
        let ten_ln2 = ln2(200);
        assert!(l.lo <= &ten_ln2.hi * 10u32 && &ten_ln2.lo * 10u32 <= l.hi);
    }

    #[test]
    fn exact_powers_are_enclosed() {
        // 8^(2/3) = 4, 10^(3/1) = 1000, 2^(10/1) = 1024
        for &(b, n, d, v) in &[(8u64, 2u64, 3u64, 4u64), (10, 3, 1, 1000), (2, 10, 1, 1024)] {
            let iv = pow_ratio(b, n, d, 128);
            let exact = BigUint::from(v) << 128;
            assert!(iv.lo <= exact && exact <= iv.hi, "{b}^({n}/{d})");
            let width = &iv.hi - &iv.lo;
            assert!(width < (BigUint::one() << 40), "width too large");
        }
    }

    #[test]
    fn matches_f64_pow() {
        for &(b, n, d) in &[(5u64, 1u64, 3u64), (999_983, 19, 20), (123_456_789, 10, 11)] {
            let iv = pow_ratio(b, n, d, 160);
            let v = libm::pow(b as f64, n as f64 / d as f64);
            assert!((iv.approx_f64() / v - 1.0).abs() < 1e-14);
        }
    }
}
