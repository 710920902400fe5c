//! Neumaier-compensated accumulation and a fixed-shape pairwise reduction.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    c: f64,
}

impl Neumaier {
    pub const fn new() -> Self {
        Neumaier { sum: 0.0, c: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if libm::fabs(self.sum) >= libm::fabs(v) {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn total(&self) -> f64 {
        self.sum + self.c
    }
}

impl core::iter::FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for v in iter {
            acc.add(v);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexAccumulator {
    re: Neumaier,
    im: Neumaier,
}

impl ComplexAccumulator {
    pub const fn new() -> Self {
        ComplexAccumulator {
            re: Neumaier::new(),
            im: Neumaier::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}

/// Sums `values` along a balanced binary tree whose shape depends only on
/// `values.len()`.
pub fn pairwise_reduce<T, F>(values: &[T], zero: T, add: F) -> T
where
    T: Copy,
    F: Fn(T, T) -> T + Copy,
{
    match values.len() {
        0 => zero,
        1 => values[0],
        n => {
            let mid = n / 2;
            add(
                pairwise_reduce(&values[..mid], zero, add),
                pairwise_reduce(&values[mid..], zero, add),
            )
        }
    }
}

/// Convenience: pairwise reduction of already compensated partial sums.
pub fn reduce_f64(values: &[f64]) -> f64 {
    pairwise_reduce(values, 0.0, |a, b| a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn neumaier_recovers_cancelled_terms() {
        let acc: Neumaier = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(acc.total(), 2.0);
    }

    #[test]
    fn pairwise_shape_is_fixed() {
        let v: Vec<f64> = (0..37).map(|i| 0.1 * i as f64).collect();
        let a = pairwise_reduce(&v, 0.0, |x, y| x + y);
        let b = pairwise_reduce(&v, 0.0, |x, y| x + y);
        assert_eq!(a.to_bits(), b.to_bits());
        assert!((a - 66.6).abs() < 1e-12);
    }
}
