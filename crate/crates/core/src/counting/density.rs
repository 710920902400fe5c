//! Local densities `β_p`, the lattice volume factor, and the main-term
//! prediction assembled from them.

use alloc::vec;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::{AffineLinearSystem, ConvexBody, CountingError};
use crate::sieve::primes_up_to;

/// Primes up to this bound enter the truncated product `∏_p β_p`.
pub const MAIN_TERM_PRIME_CUTOFF: u64 = 100;

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `β_p = p^{−d} Σ_{n ∈ (Z/p)^d} ∏_i (p/(p−1)) 1_{ψ_i(n) ≢ 0 (mod p)}`.
pub fn local_density(sys: &AffineLinearSystem, p: u64) -> Result<BigRational, CountingError> {
    if !is_prime(p) {
        return Err(CountingError::InvalidArgument("p must be prime"));
    }
    let d = sys.dim() as u32;
    if libm::pow(p as f64, d as f64) > 1e8 {
        return Err(CountingError::InvalidArgument("p^d exceeds 10^8"));
    }
    let pi = p as i64;
    let lin: alloc::vec::Vec<alloc::vec::Vec<i64>> =
        sys.linear().iter().map(|r| r.iter().map(|c| c.rem_euclid(pi)).collect()).collect();
    let cons: alloc::vec::Vec<i64> = sys.constants().iter().map(|c| c.rem_euclid(pi)).collect();
    let total = p.pow(d);
    let mut good: u64 = 0;
    let mut n = vec![0i64; d as usize];
    for _ in 0..total {
        let ok = lin.iter().zip(&cons).all(|(row, c)| {
            let v = row.iter().zip(&n).fold(*c, |acc, (a, x)| (acc + a * x) % pi);
            v != 0
        });
        if ok {
            good += 1;
        }
        for digit in n.iter_mut() {
            *digit += 1;
            if *digit < pi {
                break;
            }
            *digit = 0;
        }
    }
    let t = sys.forms() as u32;
    let factor = BigRational::new(BigInt::from(p).pow(t), BigInt::from(p - 1).pow(t));
    Ok(factor * BigRational::new(BigInt::from(good), BigInt::from(total)))
}

/// `∏_{p ≤ cutoff} β_p` (exact) and its `f64` value.
pub fn singular_series(sys: &AffineLinearSystem, cutoff: u64) -> Result<(BigRational, f64), CountingError> {
    let mut prod = BigRational::one();
    for p in primes_up_to(cutoff) {
        prod *= local_density(sys, p)?;
    }
    let v = prod.to_f64().unwrap_or(f64::NAN);
    Ok((prod, v))
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Lattice points of `K` (and, optionally, of `{ψ_i ≥ 1}`). The last
/// coordinate is resolved as an interval, so the scan is over `d − 1`
/// coordinates only.
fn lattice_count(sys: &AffineLinearSystem, body: &ConvexBody, require_positive: bool) -> u64 {
    let d = body.dim();
    if body.is_empty_box() {
        return 0;
    }
    // Constraints `a · n ≤ c`.
    let mut cons: alloc::vec::Vec<(&[i64], i128, i128)> = body
        .halfspaces
        .iter()
        .map(|(a, c)| (a.as_slice(), 1, *c as i128))
        .collect();
    if require_positive {
        // ψ_i(n) ≥ 1  ⇔  −ψ̇_i · n ≤ ψ_i(0) − 1.
        for i in 0..sys.forms() {
            cons.push((sys.linear()[i].as_slice(), -1, sys.constants()[i] as i128 - 1));
        }
    }
    let last = d - 1;
    let mut n = body.lo.clone();
    let mut count = 0u64;
    loop {
        let (mut t_lo, mut t_hi) = (body.lo[last] as i128, body.hi[last] as i128);
        for &(a, sign, c) in &cons {
            let partial: i128 = (0..last).map(|j| a[j] as i128 * n[j] as i128).sum::<i128>() * sign;
            let coef = a[last] as i128 * sign;
            let rhs = c - partial;
            if coef > 0 {
                t_hi = t_hi.min(floor_div(rhs, coef));
            } else if coef < 0 {
                t_lo = t_lo.max(-floor_div(rhs, -coef));
            } else if rhs < 0 {
                t_hi = t_lo - 1;
            }
        }
        if t_hi >= t_lo {
            count += (t_hi - t_lo + 1) as u64;
        }
        let mut j = 0;
        loop {
            if j == last {
                return count;
            }
            n[j] += 1;
            if n[j] <= body.hi[j] {
                break;
            }
            n[j] = body.lo[j];
            j += 1;
        }
    }
}

/// `#(K ∩ Z^d ∩ {ψ_i > 0}) / X^d`, the volume proportion at resolution `X`.
pub fn archimedean_density(sys: &AffineLinearSystem, body: &ConvexBody, require_positive: bool) -> Result<f64, CountingError> {
    if sys.dim() > 3 || body.dim() != sys.dim() {
        return Err(CountingError::InvalidArgument("need matching dimensions d ≤ 3"));
    }
    let x = sys.scale() as f64;
    Ok(lattice_count(sys, body, require_positive) as f64 / libm::pow(x, sys.dim() as f64))
}

/// `#(K ∩ Z^d ∩ {ψ_i > 0}) · ∏_{p ≤ 100} β_p`; the product is truncated and
/// its tail is not bounded.
pub fn predicted_main_term(sys: &AffineLinearSystem, body: &ConvexBody) -> Result<f64, CountingError> {
    let vol = archimedean_density(sys, body, true)? * libm::pow(sys.scale() as f64, sys.dim() as f64);
    let (_, s) = singular_series(sys, MAIN_TERM_PRIME_CUTOFF)?;
    Ok(vol * s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_count_matches_full_scan() {
        let sys = AffineLinearSystem::new(
            vec![vec![2, -1, 0], vec![1, 1, -3], vec![0, 1, 1]],
            vec![3, -2, 0],
            3,
            10,
        )
        .unwrap();
        let body = ConvexBody {
            lo: vec![-4, -5, -3],
            hi: vec![6, 5, 7],
            halfspaces: vec![(vec![1, 2, -1], 4), (vec![-3, 0, 2], 5)],
        };
        for positive in [false, true] {
            let mut brute = 0;
            for a in -4..=6 {
                for b in -5..=5 {
                    for c in -3..=7 {
                        let n = [a, b, c];
                        if body.contains(&n) && (!positive || (0..3).all(|i| sys.eval(i, &n) > 0)) {
                            brute += 1;
                        }
                    }
                }
            }
            assert_eq!(lattice_count(&sys, &body, positive), brute);
        }
    }

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn three_ap_small_primes() {
        let sys = AffineLinearSystem::k_ap(3, 10).unwrap();
        assert_eq!(local_density(&sys, 2).unwrap(), q(2, 1));
        assert_eq!(local_density(&sys, 3).unwrap(), q(3, 4));
        assert!(local_density(&sys, 4).is_err());
    }

    #[test]
    fn single_form_is_one() {
        let sys = AffineLinearSystem::single(10);
        for p in [2, 3, 5, 97] {
            assert_eq!(local_density(&sys, p).unwrap(), q(1, 1));
        }
    }

    #[test]
    fn archimedean_examples() {
        let sys = AffineLinearSystem::new(alloc::vec![alloc::vec![1, 0], alloc::vec![0, 1]], alloc::vec![0, 0], 1, 50).unwrap();
        let full = archimedean_density(&sys, &ConvexBody::full_box(2, 50), false).unwrap();
        assert_eq!(full, 101.0 * 101.0 / 2500.0);
        let ap = AffineLinearSystem::k_ap(3, 2000).unwrap();
        let v = archimedean_density(&ap, &ConvexBody::k_ap_simplex(3, 2000), true).unwrap();
        assert!((v - 0.25).abs() < 2e-3);
        let empty = ConvexBody::boxed(alloc::vec![1, 1], alloc::vec![0, 5]);
        assert_eq!(archimedean_density(&ap, &empty, true).unwrap(), 0.0);
    }
}
