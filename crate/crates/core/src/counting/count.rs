//! Lattice scans `Σ_{n ∈ K ∩ Z^d} ∏_i w(ψ_i(n))` and their sparse
//! specializations for progressions and ternary Goldbach.

use alloc::vec;
use alloc::vec::Vec;

use super::{AffineLinearSystem, ConvexBody, CountingError, WeightTable};
use crate::executor::Executor;
use crate::numeric::{reduce_f64, Neumaier};

pub fn count_weighted(sys: &AffineLinearSystem, body: &ConvexBody, w: &WeightTable) -> Result<f64, CountingError> {
    count_weighted_with(&crate::Sequential, sys, body, w)
}

struct Scan<'a> {
    sys: &'a AffineLinearSystem,
    body: &'a ConvexBody,
    w: &'a WeightTable,
    /// Forms grouped by the last variable they depend on.
    closing: Vec<Vec<usize>>,
}

impl Scan<'_> {
    /// Recurses over variable `j` given `point[..j]`, the partial form values
    /// and the product of weights of forms already complete.
    fn run(&self, j: usize, point: &mut [i64], partial: &mut [i64], prod: f64, acc: &mut Neumaier) -> Result<(), CountingError> {
        let d = self.sys.dim();
        let (mut lo, mut hi) = (self.body.lo[j], self.body.hi[j]);
        if j == d - 1 {
            // Tighten the last coordinate against each half-space exactly.
            for (a, c) in &self.body.halfspaces {
                let s: i128 = a[..j].iter().zip(&point[..j]).map(|(x, y)| *x as i128 * *y as i128).sum();
                let rest = *c as i128 - s;
                let al = a[j] as i128;
                if al > 0 {
                    hi = hi.min(rest.div_euclid(al).clamp(i64::MIN as i128, i64::MAX as i128) as i64);
                } else if al < 0 {
                    let v = -((-rest).div_euclid(-al));
                    lo = lo.max(v.clamp(i64::MIN as i128, i64::MAX as i128) as i64);
                } else if rest < 0 {
                    return Ok(());
                }
            }
        }
        let lin = self.sys.linear();
        for v in lo..=hi {
            point[j] = v;
            let mut p = prod;
            for &i in &self.closing[j] {
                let val = partial[i] + lin[i][j] * v;
                p *= self.w.get(val)?;
                if p == 0.0 {
                    break;
                }
            }
            if p == 0.0 {
                continue;
            }
            if j == d - 1 {
                acc.add(p);
            } else {
                for (i, pi) in partial.iter_mut().enumerate() {
                    *pi += lin[i][j] * v;
                }
                let r = self.run(j + 1, point, partial, p, acc);
                for (i, pi) in partial.iter_mut().enumerate() {
                    *pi -= lin[i][j] * v;
                }
                r?;
            }
        }
        Ok(())
    }
}

/// Naive lattice scan over `K ∩ Z^d`, parallel over the first coordinate.
pub fn count_weighted_with<E: Executor>(
    exec: &E,
    sys: &AffineLinearSystem,
    body: &ConvexBody,
    w: &WeightTable,
) -> Result<f64, CountingError> {
    let d = sys.dim();
    if body.dim() != d || body.halfspaces.iter().any(|(a, _)| a.len() != d) {
        return Err(CountingError::InvalidArgument("body and system dimensions differ"));
    }
    if body.is_empty_box() {
        return Ok(0.0);
    }
    let mut closing = vec![Vec::new(); d];
    for (i, row) in sys.linear().iter().enumerate() {
        let last = row.iter().rposition(|&c| c != 0).unwrap_or(0);
        closing[last].push(i);
    }
    let scan = Scan { sys, body, w, closing };
    if d == 1 {
        let mut acc = Neumaier::new();
        scan.run(0, &mut [0], &mut sys.constants().to_vec(), 1.0, &mut acc)?;
        return Ok(acc.total());
    }
    let (lo0, hi0) = (body.lo[0], body.hi[0]);
    let count = (hi0 - lo0 + 1) as usize;
    let parts = exec.map_indexed(count, |k| -> Result<f64, CountingError> {
        let v = lo0 + k as i64;
        let mut point = vec![0i64; d];
        let mut partial: Vec<i64> = sys.constants().to_vec();
        let mut acc = Neumaier::new();
        point[0] = v;
        let mut p = 1.0;
        for &i in &scan.closing[0] {
            p *= w.get(partial[i] + sys.linear()[i][0] * v)?;
        }
        if p == 0.0 {
            return Ok(0.0);
        }
        for (i, pi) in partial.iter_mut().enumerate() {
            *pi += sys.linear()[i][0] * v;
        }
        scan.run(1, &mut point, &mut partial, p, &mut acc)?;
        Ok(acc.total())
    });
    let parts = parts.into_iter().collect::<Result<Vec<f64>, _>>()?;
    Ok(reduce_f64(&parts))
}

/// Support points of the first coordinate handled per work unit.
const SPARSE_CHUNK: usize = 512;

/// `Σ_{n,m ≥ 1, n+(k−1)m ≤ X} ∏_{i<k} w(n + im)`.
pub fn kap_count(k: usize, x: i64, w: &WeightTable) -> Result<f64, CountingError> {
    kap_count_with(&crate::Sequential, k, x, w)
}

/// [`kap_count`] by iterating over pairs `(n, n+m)` of support points only;
/// every other term of the sum vanishes.
pub fn kap_count_with<E: Executor>(exec: &E, k: usize, x: i64, w: &WeightTable) -> Result<f64, CountingError> {
    if k < 3 {
        return Err(CountingError::InvalidArgument("k must be at least 3"));
    }
    if x < 1 {
        return Ok(0.0);
    }
    if w.hi() < x {
        return Err(CountingError::RangeMismatch { value: x, hi: w.hi() });
    }
    let vals = &w.values()[..x as usize];
    let support: Vec<i64> = w.support().into_iter().take_while(|&v| v <= x).collect();
    let step = (k - 1) as i64;
    let chunks = support.len().div_ceil(SPARSE_CHUNK);
    let parts = exec.map_indexed(chunks, |c| {
        let mut acc = Neumaier::new();
        let end = ((c + 1) * SPARSE_CHUNK).min(support.len());
        for a in c * SPARSE_CHUNK..end {
            let n = support[a];
            let wn = vals[n as usize - 1];
            let m_max = (x - n) / step;
            for &q in &support[a + 1..] {
                let m = q - n;
                if m > m_max {
                    break;
                }
                let mut p = wn * vals[q as usize - 1];
                for i in 2..k as i64 {
                    p *= vals[(n + i * m) as usize - 1];
                    if p == 0.0 {
                        break;
                    }
                }
                if p != 0.0 {
                    acc.add(p);
                }
            }
        }
        acc.total()
    });
    Ok(reduce_f64(&parts))
}

/// `Σ_{n1+n2+n3 = N, n_i ≥ 1} w(n1) w(n2) w(n3)` over ordered triples.
pub fn goldbach3_count(n: i64, w: &WeightTable) -> Result<f64, CountingError> {
    goldbach3_count_with(&crate::Sequential, n, w)
}

pub fn goldbach3_count_with<E: Executor>(exec: &E, n: i64, w: &WeightTable) -> Result<f64, CountingError> {
    if n < 3 {
        return Ok(0.0);
    }
    if w.hi() < n - 2 {
        return Err(CountingError::RangeMismatch { value: n - 2, hi: w.hi() });
    }
    let vals = w.values();
    let support: Vec<i64> = w.support().into_iter().take_while(|&v| v <= n - 2).collect();
    let chunks = support.len().div_ceil(SPARSE_CHUNK);
    let parts = exec.map_indexed(chunks, |c| {
        let mut acc = Neumaier::new();
        let end = ((c + 1) * SPARSE_CHUNK).min(support.len());
        for &n1 in &support[c * SPARSE_CHUNK..end] {
            let w1 = vals[n1 as usize - 1];
            for &n2 in &support {
                let n3 = n - n1 - n2;
                if n3 < 1 {
                    break;
                }
                let p = w1 * vals[n2 as usize - 1] * vals[n3 as usize - 1];
                if p != 0.0 {
                    acc.add(p);
                }
            }
        }
        acc.total()
    });
    Ok(reduce_f64(&parts))
}
