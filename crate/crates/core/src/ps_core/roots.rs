//! Exact integer evaluation of `⌊base^(num/den)⌋` and `⌈base^(num/den)⌉`.

use num_bigint::BigUint;
use num_traits::Pow;

enum Target {
    Small(u128),
    Big(BigUint),
}

impl Target {
    fn new(base: u64, num: u64) -> Self {
        let bits = 64 - base.leading_zeros() as u64;
        if bits * num <= 127 {
            Target::Small((base as u128).pow(num as u32))
        } else {
            Target::Big(Pow::pow(BigUint::from(base), num))
        }
    }

    fn bits(&self) -> u64 {
        match self {
            Target::Small(v) => 128 - v.leading_zeros() as u64,
            Target::Big(v) => v.bits(),
        }
    }

    /// Compares `g^den` against the target.
    fn cmp_power(&self, g: u64, den: u64) -> core::cmp::Ordering {
        let gbits = 64 - g.leading_zeros() as u64;
        if let Target::Small(t) = self {
            if gbits * den <= 127 {
                return (g as u128).pow(den as u32).cmp(t);
            }
            // g^den ≥ 2^{(gbits-1)·den}; if that already exceeds 2^127 it is larger.
            if (gbits.saturating_sub(1)) * den >= 128 {
                return core::cmp::Ordering::Greater;
            }
            let p: BigUint = Pow::pow(BigUint::from(g), den);
            return p.cmp(&BigUint::from(*t));
        }
        let Target::Big(t) = self else { unreachable!() };
        let p: BigUint = if g <= 1 {
            BigUint::from(g)
        } else {
            Pow::pow(BigUint::from(g), den)
        };
        p.cmp(t)
    }
}

/// Returns `(⌊base^(num/den)⌋, exact, bits)` where `exact` says whether the
/// power is an integer and `bits` is the size of the largest integer compared.
pub(crate) fn floor_pow_exact(base: u64, num: u64, den: u64) -> (u64, bool, u32) {
    use core::cmp::Ordering::*;
    assert!(base >= 1 && den >= 1);
    if base == 1 || num == 0 {
        return (1, true, 1);
    }
    let target = Target::new(base, num);
    let guess = libm::pow(base as f64, num as f64 / den as f64);
    let mut g = if guess.is_finite() && guess < 1.8e19 {
        libm::floor(guess) as u64
    } else {
        u64::MAX - 1
    };
    // The f64 guess is within a few units; fall back to bisection otherwise.
    let mut steps = 0;
    loop {
        match target.cmp_power(g, den) {
            Greater => {
                g -= 1;
            }
            Equal => return (g, true, target.bits() as u32),
            Less => match target.cmp_power(g + 1, den) {
                Greater => return (g, false, target.bits() as u32),
                Equal => return (g + 1, true, target.bits() as u32),
                Less => g += 1,
            },
        }
        steps += 1;
        if steps > 4 {
            break;
        }
    }
    let (mut lo, mut hi) = (0u64, g.saturating_mul(2).max(2));
    while target.cmp_power(hi, den) != Greater {
        hi = hi.saturating_mul(2);
    }
    // invariant: lo^den ≤ target < hi^den
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if target.cmp_power(mid, den) == Greater {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let exact = target.cmp_power(lo, den) == Equal;
    (lo, exact, target.bits() as u32)
}

/// `base^num == k^den` exactly.
pub(crate) fn is_exact_power(base: u64, num: u64, k: u64, den: u64) -> bool {
    Target::new(base, num).cmp_power(k, den) == core::cmp::Ordering::Equal
}
