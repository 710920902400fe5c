use alloc::format;
use alloc::vec::Vec;

use super::MajorantError;
use crate::executor::Executor;
use crate::expsum::exp_sum_with;
use crate::numeric::{e_dd, Dd};
use crate::Complex64;

pub const MAX_PHASE_SUM_LENGTH: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseSumResult {
    pub sum: Complex64,
    pub len: u64,
    /// `|sum| / |I|`.
    pub normalized: f64,
}

/// `Σ_{x ∈ [lo, hi]} e(Σ_i h_i ψ_i(x)^γ)` for integer forms `ψ_i(x) = a_i x + b_i`
/// that stay positive on the interval and satisfy `a_i b_j ≠ a_j b_i`.
pub fn multi_linear_phase_sum<E: Executor>(
    exec: &E,
    h: &[i64],
    forms: &[(i64, i64)],
    gamma: f64,
    lo: i64,
    hi: i64,
) -> Result<PhaseSumResult, MajorantError> {
    if h.is_empty() || h.len() != forms.len() {
        return Err(MajorantError::InvalidParams("need one coefficient per form".into()));
    }
    if h.contains(&0) {
        return Err(MajorantError::InvalidParams("coefficients must be nonzero".into()));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(MajorantError::InvalidParams(format!("gamma = {gamma} not in (0, 1)")));
    }
    if lo > hi || (hi as i128 - lo as i128 + 1) as u64 > MAX_PHASE_SUM_LENGTH {
        return Err(MajorantError::InvalidParams("interval must be nonempty and at most 10^7 long".into()));
    }
    for i in 0..forms.len() {
        for j in i + 1..forms.len() {
            let (ai, bi) = forms[i];
            let (aj, bj) = forms[j];
            if ai as i128 * bj as i128 == aj as i128 * bi as i128 {
                return Err(MajorantError::SeparationViolated { i, j });
            }
        }
    }
    let form_at = |(a, b): (i64, i64), x: i64| a as i128 * x as i128 + b as i128;
    for &f in forms {
        let (u, v) = (form_at(f, lo), form_at(f, hi));
        if u < 1 || v < 1 || u.max(v) > 1 << 52 {
            return Err(MajorantError::InvalidParams("forms must take values in [1, 2^52] on the interval".into()));
        }
    }
    let phase = |x: i64| {
        let mut acc = Dd::ZERO;
        for (&hi_, &f) in h.iter().zip(forms) {
            let v = form_at(f, x) as u64;
            acc = acc + Dd::pow_int(v, gamma).mul_f64(hi_ as f64);
        }
        e_dd(acc)
    };
    let sum = exp_sum_with(exec, phase, lo, hi).map_err(|e| MajorantError::InvalidParams(format!("{e}")))?;
    let len = (hi - lo + 1) as u64;
    Ok(PhaseSumResult {
        sum,
        len,
        normalized: sum.norm() / len as f64,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct VandermondeProbe {
    /// `S_j = Σ_i v_i c_i^j`, `j = 1..s`.
    pub s: Vec<f64>,
    pub max_abs: f64,
    /// `‖V‖_1 / (s ‖M^{-1}‖_1)` with `V_i = v_i c_i`.
    pub bound: f64,
    pub inverse_norm: f64,
}

/// Coefficients (low to high) of the Lagrange basis polynomial for node `k`.
fn lagrange_coeffs(c: &[f64], k: usize) -> Vec<f64> {
    let mut p = alloc::vec![1.0];
    let mut denom = 1.0;
    for (m, &cm) in c.iter().enumerate() {
        if m == k {
            continue;
        }
        let mut next = alloc::vec![0.0; p.len() + 1];
        for (i, &a) in p.iter().enumerate() {
            next[i + 1] += a;
            next[i] -= a * cm;
        }
        p = next;
        denom *= c[k] - cm;
    }
    p.iter().map(|a| a / denom).collect()
}

/// Compares `max_j |S_j|` with the lower bound from `M V = S`, where
/// `M_{j,i} = c_i^{j−1}`: `‖V‖_1 ≤ ‖M^{-1}‖_1 ‖S‖_1 ≤ s ‖M^{-1}‖_1 max_j |S_j|`.
pub fn vandermonde_probe(c: &[f64], v: &[f64]) -> Result<VandermondeProbe, MajorantError> {
    let s = c.len();
    if s == 0 || v.len() != s {
        return Err(MajorantError::InvalidParams("c and v must be nonempty and of equal length".into()));
    }
    for i in 0..s {
        if !c[i].is_finite() || !v[i].is_finite() {
            return Err(MajorantError::InvalidParams("entries must be finite".into()));
        }
        if c[..i].contains(&c[i]) {
            return Err(MajorantError::InvalidParams("nodes must be pairwise distinct".into()));
        }
    }
    let sums: Vec<f64> = (1..=s as i32)
        .map(|j| c.iter().zip(v).map(|(&ci, &vi)| vi * libm::pow(ci, j as f64)).sum())
        .collect();
    let max_abs = sums.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    // Row k of M^{-1} holds the coefficients of the k-th Lagrange polynomial.
    let rows: Vec<Vec<f64>> = (0..s).map(|k| lagrange_coeffs(c, k)).collect();
    let inverse_norm = (0..s)
        .map(|j| rows.iter().map(|r| r[j].abs()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let v_norm: f64 = c.iter().zip(v).map(|(ci, vi)| (ci * vi).abs()).sum();
    let bound = v_norm / (s as f64 * inverse_norm);
    if max_abs < bound * (1.0 - 1e-12) {
        return Err(MajorantError::BoundViolated { max: max_abs, bound });
    }
    Ok(VandermondeProbe {
        s: sums,
        max_abs,
        bound,
        inverse_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_node_example() {
        let p = vandermonde_probe(&[1.0, 0.5], &[1.0, 1.0]).unwrap();
        assert_eq!(p.s, [1.5, 1.25]);
        assert!((p.inverse_norm - 4.0).abs() < 1e-15);
        assert!((p.bound - 0.1875).abs() < 1e-15);
        assert!(p.bound <= 1.5);
    }

    #[test]
    fn single_node_is_tight() {
        let p = vandermonde_probe(&[0.3], &[-2.0]).unwrap();
        assert!((p.max_abs - 0.6).abs() < 1e-15);
        assert!((p.bound - p.max_abs).abs() < 1e-15);
    }

    #[test]
    fn rejects_repeated_nodes() {
        assert!(vandermonde_probe(&[1.0, 1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn separation_is_enforced() {
        let r = multi_linear_phase_sum(&crate::Sequential, &[1, 1], &[(2, 4), (1, 2)], 0.9, 1, 100);
        assert!(matches!(r, Err(MajorantError::SeparationViolated { i: 0, j: 1 })));
        let r = multi_linear_phase_sum(&crate::Sequential, &[1, 2], &[(1, 0), (2, 1)], 0.9, 1, 1000).unwrap();
        assert_eq!(r.len, 1000);
        assert!(r.normalized <= 1.0);
    }
}
