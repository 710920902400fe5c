//! Brute-force reference implementations. Each one follows the definition
//! directly and shares no code with the library routine it checks.

#![allow(dead_code)]

use num_bigint::BigUint;
use pslab_core::counting::{AffineLinearSystem, ConvexBody};
use pslab_core::Complex64;

/// Largest `n` with `n^a ≤ m^b`, i.e. `⌊m^{b/a}⌋`.
fn floor_root_pow(m: u64, a: u32, b: u32) -> u64 {
    let target = BigUint::from(m).pow(b);
    let mut n = (m as f64).powf(b as f64 / a as f64) as u64;
    while BigUint::from(n).pow(a) > target {
        n -= 1;
    }
    while BigUint::from(n + 1).pow(a) <= target {
        n += 1;
    }
    n
}

/// Membership in `{⌊m^{1/γ}⌋ : m ≥ 1}` for `γ = a/b`, indexed by `n ≤ n_max`,
/// found by walking `m` upward.
pub fn ps_members(a: u32, b: u32, n_max: u64) -> Vec<bool> {
    let mut member = vec![false; n_max as usize + 1];
    for m in 1.. {
        let n = floor_root_pow(m, a, b);
        if n > n_max {
            break;
        }
        member[n as usize] = true;
    }
    member
}

/// `Λ(n)` by trial division.
pub fn von_mangoldt(mut n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            return if n == 1 { (p as f64).ln() } else { 0.0 };
        }
        p += 1;
    }
    (n as f64).ln()
}

/// `max |Σ_{n∈P} f(n)|` over every progression `P` in the index range,
/// including the empty one.
pub fn star_norm(vals: &[Complex64]) -> f64 {
    let n = vals.len();
    let mut best = 0.0f64;
    for start in 0..n {
        for step in 1..=n {
            let mut s = Complex64::new(0.0, 0.0);
            let mut i = start;
            while i < n {
                s += vals[i];
                best = best.max(s.norm());
                i += step;
            }
        }
    }
    best
}

/// `Σ_{n ∈ K ∩ Z^d} ∏_i w(ψ_i(n))` by looping over the bounding box.
pub fn nested_count(sys: &AffineLinearSystem, body: &ConvexBody, w: &dyn Fn(i64) -> f64) -> f64 {
    let d = body.lo.len();
    let mut n = body.lo.clone();
    let mut total = 0.0;
    loop {
        if body.contains(&n) {
            let mut prod = 1.0;
            for i in 0..sys.forms() {
                let v: i64 = sys.linear()[i].iter().zip(&n).map(|(a, x)| a * x).sum::<i64>() + sys.constants()[i];
                prod *= w(v);
            }
            total += prod;
        }
        let mut j = 0;
        loop {
            if j == d {
                return total;
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

/// `‖f‖_{U²} = (Σ_ξ |f̂(ξ)|⁴)^{1/4}` with `f̂(ξ) = E_x f(x) e(−xξ/N)`.
pub fn gowers_u2_fourier(f: &[Complex64]) -> f64 {
    let n = f.len();
    let mut sum = 0.0;
    for xi in 0..n {
        let mut c = Complex64::new(0.0, 0.0);
        for (x, v) in f.iter().enumerate() {
            let t = -2.0 * std::f64::consts::PI * ((x * xi) % n) as f64 / n as f64;
            c += v * Complex64::new(t.cos(), t.sin());
        }
        sum += (c / n as f64).norm().powi(4);
    }
    sum.powf(0.25)
}

/// `(E_{x,h} ∏_ω C^{|ω|} f(x + ω·h))^{1/2^s}` over all `N^{s+1}` tuples.
pub fn gowers_brute(f: &[Complex64], s: u32) -> f64 {
    let n = f.len();
    let mut total = Complex64::new(0.0, 0.0);
    let tuples = n.pow(s + 1);
    let mut idx = vec![0usize; s as usize + 1];
    for t in 0..tuples {
        let mut r = t;
        for v in idx.iter_mut() {
            *v = r % n;
            r /= n;
        }
        let (x, h) = (idx[0], &idx[1..]);
        let mut prod = Complex64::new(1.0, 0.0);
        for omega in 0..1usize << s {
            let mut pos = x;
            for (j, hj) in h.iter().enumerate() {
                if omega >> j & 1 == 1 {
                    pos += hj;
                }
            }
            let v = f[pos % n];
            prod *= if omega.count_ones() % 2 == 1 { v.conj() } else { v };
        }
        total += prod;
    }
    (total.re / tuples as f64).max(0.0).powf(1.0 / (1u32 << s) as f64)
}
