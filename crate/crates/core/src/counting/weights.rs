use alloc::vec::Vec;

use super::CountingError;
use crate::executor::Executor;
use crate::ps_core::{lambda_gamma_factor, PsParameter, PsSet};
use crate::sieve::LambdaTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    /// `Λ`.
    VonMangoldt,
    /// `Λ_γ = (n^{1−γ}/γ) Λ(n) 1_{n∈PS}`.
    LambdaGamma(PsParameter),
    /// `1`, for counting lattice points.
    Ones,
}

/// Arithmetic weights precomputed on `[1, hi]`, with a fixed value for
/// every `n ≤ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightTable {
    values: Vec<f64>,
    nonpositive: f64,
}

impl WeightTable {
    pub fn from_values(values: Vec<f64>, nonpositive: f64) -> Self {
        WeightTable { values, nonpositive }
    }

    pub fn ones(hi: u64) -> Self {
        Self::from_values(alloc::vec![1.0; hi as usize], 1.0)
    }

    /// `Λ` on `[1, hi]`; `Λ(n) = 0` for `n ≤ 0`.
    pub fn von_mangoldt(table: &LambdaTable, hi: u64) -> Result<Self, CountingError> {
        check_cover(table, hi)?;
        Ok(Self::from_values(table.values()[..hi as usize].to_vec(), 0.0))
    }

    /// `Λ_γ` on `[1, hi]`.
    pub fn lambda_gamma<E: Executor>(
        exec: &E,
        table: &LambdaTable,
        p: &PsParameter,
        hi: u64,
    ) -> Result<Self, CountingError> {
        check_cover(table, hi)?;
        let ps = PsSet::build(exec, hi, p)?;
        let gamma = p.gamma();
        let values = table.values()[..hi as usize]
            .iter()
            .enumerate()
            .map(|(i, &lam)| {
                let n = i as u64 + 1;
                if lam != 0.0 && ps.contains(n) {
                    lam * lambda_gamma_factor(n, gamma)
                } else {
                    0.0
                }
            })
            .collect();
        Ok(Self::from_values(values, 0.0))
    }

    pub fn build<E: Executor>(exec: &E, kind: &WeightKind, table: &LambdaTable, hi: u64) -> Result<Self, CountingError> {
        match kind {
            WeightKind::VonMangoldt => Self::von_mangoldt(table, hi),
            WeightKind::LambdaGamma(p) => Self::lambda_gamma(exec, table, p, hi),
            WeightKind::Ones => Ok(Self::ones(hi)),
        }
    }

    pub fn hi(&self) -> i64 {
        self.values.len() as i64
    }

    #[inline]
    pub fn get(&self, v: i64) -> Result<f64, CountingError> {
        if v <= 0 {
            return Ok(self.nonpositive);
        }
        self.values
            .get(v as usize - 1)
            .copied()
            .ok_or(CountingError::RangeMismatch { value: v, hi: self.hi() })
    }

    /// `v ∈ [1, hi]` with nonzero weight, increasing.
    pub fn support(&self) -> Vec<i64> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &w)| w != 0.0)
            .map(|(i, _)| i as i64 + 1)
            .collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn nonpositive(&self) -> f64 {
        self.nonpositive
    }
}

fn check_cover(table: &LambdaTable, hi: u64) -> Result<(), CountingError> {
    if table.lo() != 1 || table.hi() < hi {
        return Err(CountingError::InvalidArgument("von Mangoldt table must cover [1, hi]"));
    }
    Ok(())
}
