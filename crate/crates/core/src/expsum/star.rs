//! `|Σ_{n∈I} f(n)|* = sup_P |Σ_{n∈P} f(n)|` over arithmetic progressions `P ⊂ I`.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::ExpSumError;

pub const MAX_EXACT_LENGTH: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarMode {
    /// Every progression `(start, step, length)` inside the interval.
    Exact,
    /// Step-1 progressions only; a lower bound for the true supremum.
    IntervalOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarNormResult {
    pub value: f64,
    /// `(start, step, length)`; length 0 denotes the empty progression.
    pub argmax_progression: (i64, i64, u64),
}

/// Supremum of `|Σ f(n)|` over progressions in `[lo, hi]`. Ties keep the
/// first progression in `(start, step, length)` order.
pub fn star_norm<F>(f: F, lo: i64, hi: i64, mode: StarMode) -> Result<StarNormResult, ExpSumError>
where
    F: Fn(i64) -> Complex64,
{
    if lo > hi {
        return Err(ExpSumError::InvalidArgument("empty interval"));
    }
    let len = (hi - lo + 1) as u64;
    if mode == StarMode::Exact && len > MAX_EXACT_LENGTH {
        return Err(ExpSumError::InvalidArgument("exact mode needs length ≤ 64"));
    }
    let vals: Vec<Complex64> = (lo..=hi).map(&f).collect();
    let n = vals.len();
    let mut best = StarNormResult {
        value: 0.0,
        argmax_progression: (lo, 1, 0),
    };
    let max_step = match mode {
        StarMode::Exact => n.max(1),
        StarMode::IntervalOnly => 1,
    };
    for a in 0..n {
        for d in 1..=max_step {
            let mut s = Complex64::new(0.0, 0.0);
            let mut i = a;
            let mut count = 0u64;
            while i < n {
                s += vals[i];
                count += 1;
                let v = s.norm();
                if v > best.value {
                    best = StarNormResult {
                        value: v,
                        argmax_progression: (lo + a as i64, d as i64, count),
                    };
                }
                i += d;
            }
            if a + d >= n {
                // Longer steps only ever see the single term at `a`.
                break;
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(v: f64) -> Complex64 {
        Complex64::new(v, 0.0)
    }

    #[test]
    fn constant_sequence() {
        let r = star_norm(|_| re(1.0), 1, 8, StarMode::Exact).unwrap();
        assert_eq!(r.value, 8.0);
        assert_eq!(r.argmax_progression, (1, 1, 8));
    }

    #[test]
    fn alternating_sequence() {
        let f = |n: i64| re(if n % 2 == 0 { 1.0 } else { -1.0 });
        let r = star_norm(f, 1, 8, StarMode::Exact).unwrap();
        assert_eq!(r.value, 4.0);
        assert_eq!(r.argmax_progression.1, 2);
        let relaxed = star_norm(f, 1, 8, StarMode::IntervalOnly).unwrap();
        assert_eq!(relaxed.value, 1.0);
    }

    #[test]
    fn exact_mode_caps_length() {
        assert!(star_norm(|_| re(1.0), 1, 65, StarMode::Exact).is_err());
        assert!(star_norm(|_| re(1.0), 1, 1000, StarMode::IntervalOnly).is_ok());
    }
}
