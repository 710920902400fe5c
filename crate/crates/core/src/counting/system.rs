use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::CountingError;

/// Forms `ψ_i(n) = ψ̇_i · n + ψ_i(0)` on `Z^d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineLinearSystem {
    d: usize,
    linear: Vec<Vec<i64>>,
    constants: Vec<i64>,
    bound: i64,
    scale: i64,
}

impl AffineLinearSystem {
    /// Validates finite complexity (pairwise independent linear parts),
    /// `‖ψ̇_i‖_∞ ≤ L` and `|ψ_i(0)| ≤ L·X`.
    pub fn new(linear: Vec<Vec<i64>>, constants: Vec<i64>, bound: i64, scale: i64) -> Result<Self, CountingError> {
        let d = linear.first().map_or(0, |r| r.len());
        if d == 0 || linear.iter().any(|r| r.len() != d) {
            return Err(CountingError::InvalidSystem("rows must share a positive length".into()));
        }
        if constants.len() != linear.len() {
            return Err(CountingError::InvalidSystem("one constant per form".into()));
        }
        if bound < 1 || scale < 1 {
            return Err(CountingError::InvalidSystem("L and X must be positive".into()));
        }
        for (i, r) in linear.iter().enumerate() {
            if r.iter().all(|&c| c == 0) {
                return Err(CountingError::InvalidSystem(format!("form {i} has zero linear part")));
            }
            if r.iter().any(|c| c.unsigned_abs() > bound as u64) {
                return Err(CountingError::InvalidSystem(format!("form {i} exceeds the coefficient bound")));
            }
            if constants[i].unsigned_abs() as u128 > bound as u128 * scale as u128 {
                return Err(CountingError::InvalidSystem(format!("constant of form {i} exceeds L·X")));
            }
        }
        for i in 0..linear.len() {
            for j in i + 1..linear.len() {
                if proportional(&linear[i], &linear[j]) {
                    return Err(CountingError::InvalidSystem(format!("forms {i} and {j} are linearly dependent")));
                }
            }
        }
        Ok(AffineLinearSystem {
            d,
            linear,
            constants,
            bound,
            scale,
        })
    }

    /// `n, n + m, …, n + (k−1)m` on `Z²`.
    pub fn k_ap(k: usize, scale: i64) -> Result<Self, CountingError> {
        if k < 2 {
            return Err(CountingError::InvalidSystem("k must be at least 2".into()));
        }
        let linear = (0..k as i64).map(|i| vec![1, i]).collect();
        Self::new(linear, vec![0; k], (k as i64 - 1).max(1), scale)
    }

    /// `n1, n2, N − n1 − n2` on `Z²`.
    pub fn goldbach3(n: i64) -> Result<Self, CountingError> {
        Self::new(vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![0, 0, n], 1, n.max(1))
    }

    pub fn single(scale: i64) -> Self {
        AffineLinearSystem {
            d: 1,
            linear: vec![vec![1]],
            constants: vec![0],
            bound: 1,
            scale,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn forms(&self) -> usize {
        self.linear.len()
    }

    pub fn linear(&self) -> &[Vec<i64>] {
        &self.linear
    }

    pub fn constants(&self) -> &[i64] {
        &self.constants
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    pub fn eval(&self, i: usize, n: &[i64]) -> i64 {
        self.linear[i].iter().zip(n).map(|(a, b)| a * b).sum::<i64>() + self.constants[i]
    }

    pub fn descriptor(&self) -> String {
        let forms: Vec<String> = self
            .linear
            .iter()
            .zip(&self.constants)
            .map(|(r, c)| {
                let coeffs: Vec<String> = r.iter().map(|v| format!("{v}")).collect();
                format!("[{}|{}]", coeffs.join(" "), c)
            })
            .collect();
        forms.join("")
    }
}

fn proportional(a: &[i64], b: &[i64]) -> bool {
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] as i128 * b[j] as i128 != a[j] as i128 * b[i] as i128 {
                return false;
            }
        }
    }
    // All 2×2 minors vanish; with both rows nonzero they are proportional.
    true
}

/// A box `∏ [lo_j, hi_j]` cut by integer half-spaces `a · n ≤ c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexBody {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    pub halfspaces: Vec<(Vec<i64>, i64)>,
}

impl ConvexBody {
    pub fn boxed(lo: Vec<i64>, hi: Vec<i64>) -> Self {
        ConvexBody {
            lo,
            hi,
            halfspaces: Vec::new(),
        }
    }

    /// `[−X, X]^d`.
    pub fn full_box(d: usize, x: i64) -> Self {
        Self::boxed(vec![-x; d], vec![x; d])
    }

    /// `{1 ≤ n, m ≤ X, n + (k−1)m ≤ X}`.
    pub fn k_ap_simplex(k: usize, x: i64) -> Self {
        ConvexBody {
            lo: vec![1, 1],
            hi: vec![x, x],
            halfspaces: vec![(vec![1, k as i64 - 1], x)],
        }
    }

    /// `{n1, n2 ≥ 1, n1 + n2 ≤ N − 1}`.
    pub fn goldbach_simplex(n: i64) -> Self {
        ConvexBody {
            lo: vec![1, 1],
            hi: vec![n, n],
            halfspaces: vec![(vec![1, 1], n - 1)],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, n: &[i64]) -> bool {
        n.iter().zip(&self.lo).all(|(v, l)| v >= l)
            && n.iter().zip(&self.hi).all(|(v, h)| v <= h)
            && self
                .halfspaces
                .iter()
                .all(|(a, c)| a.iter().zip(n).map(|(x, y)| *x as i128 * *y as i128).sum::<i128>() <= *c as i128)
    }

    pub fn is_empty_box(&self) -> bool {
        self.lo.iter().zip(&self.hi).any(|(l, h)| l > h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_dependent_forms() {
        assert!(AffineLinearSystem::new(vec![vec![1, 2], vec![2, 4]], vec![0, 1], 4, 10).is_err());
        assert!(AffineLinearSystem::new(vec![vec![1, 2], vec![-1, -2]], vec![0, 1], 4, 10).is_err());
        assert!(AffineLinearSystem::new(vec![vec![0, 0]], vec![0], 4, 10).is_err());
        assert!(AffineLinearSystem::k_ap(4, 100).is_ok());
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(AffineLinearSystem::new(vec![vec![5, 1]], vec![0], 4, 10).is_err());
        assert!(AffineLinearSystem::new(vec![vec![1, 1]], vec![41], 4, 10).is_err());
    }

    #[test]
    fn simplex_membership() {
        let k = ConvexBody::k_ap_simplex(3, 10);
        assert!(k.contains(&[2, 4]));
        assert!(!k.contains(&[3, 4]));
        assert!(!k.contains(&[0, 1]));
    }
}
