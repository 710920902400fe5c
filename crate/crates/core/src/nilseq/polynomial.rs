//! Polynomial phases in the monomial basis `Σ a_j n^j` or the binomial basis
//! `Σ α_j binom(n, j)`, and the smoothness norm.

use alloc::vec;
use alloc::vec::Vec;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::NilError;
use crate::numeric::Scalar;

pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Basis {
    Monomial,
    Binomial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialPhase<T> {
    coeffs: Vec<T>,
    basis: Basis,
}

/// Rows `k = 0..=d` of `S(j, k)·k!`, the number of surjections from `j` onto
/// `k` points; `n^j = Σ_k S(j,k) k! binom(n,k)`.
fn surjection_table(d: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); d + 1]; d + 1];
    s[0][0] = BigInt::one();
    for j in 1..=d {
        for k in 1..=j {
            // S(j,k) = k S(j-1,k) + S(j-1,k-1); times k! gives
            // k·T(j-1,k) + k·T(j-1,k-1).
            s[j][k] = (&s[j - 1][k] + &s[j - 1][k - 1]) * BigInt::from(k);
        }
    }
    s
}

/// Signed Stirling numbers of the first kind: `n(n-1)…(n-k+1) = Σ_j s(k,j) n^j`.
fn stirling_first(d: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); d + 1]; d + 1];
    s[0][0] = BigInt::one();
    for k in 1..=d {
        for j in 1..=k {
            s[k][j] = &s[k - 1][j - 1] - BigInt::from(k - 1) * &s[k - 1][j];
        }
    }
    s
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Generalized `binom(n, k)` for any integer `n`.
pub fn binom_int(n: i64, k: usize) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n) - BigInt::from(i);
    }
    num / factorial(k)
}

impl<T: Scalar> PolynomialPhase<T> {
    pub fn new(coeffs: Vec<T>, basis: Basis) -> Result<Self, NilError> {
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(NilError::DegreeTooLarge(coeffs.len() - 1));
        }
        let mut p = PolynomialPhase { coeffs, basis };
        if p.coeffs.is_empty() {
            p.coeffs.push(T::zero());
        }
        Ok(p)
    }

    pub fn monomial(coeffs: Vec<T>) -> Result<Self, NilError> {
        Self::new(coeffs, Basis::Monomial)
    }

    pub fn binomial(coeffs: Vec<T>) -> Result<Self, NilError> {
        Self::new(coeffs, Basis::Binomial)
    }

    pub fn zero() -> Self {
        PolynomialPhase {
            coeffs: vec![T::zero()],
            basis: Basis::Monomial,
        }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Formal degree (number of stored coefficients minus one).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_binomial_basis(&self) -> Self {
        match self.basis {
            Basis::Binomial => self.clone(),
            Basis::Monomial => {
                let d = self.degree();
                let t = surjection_table(d);
                let one = BigInt::one();
                let coeffs = (0..=d)
                    .map(|k| {
                        (k..=d).fold(T::zero(), |acc, j| {
                            acc + self.coeffs[j].clone() * T::from_ratio(&t[j][k], &one)
                        })
                    })
                    .collect();
                PolynomialPhase {
                    coeffs,
                    basis: Basis::Binomial,
                }
            }
        }
    }

    pub fn to_monomial_basis(&self) -> Self {
        match self.basis {
            Basis::Monomial => self.clone(),
            Basis::Binomial => {
                let d = self.degree();
                let s = stirling_first(d);
                let coeffs = (0..=d)
                    .map(|j| {
                        (j..=d).fold(T::zero(), |acc, k| {
                            acc + self.coeffs[k].clone() * T::from_ratio(&s[k][j], &factorial(k))
                        })
                    })
                    .collect();
                PolynomialPhase {
                    coeffs,
                    basis: Basis::Monomial,
                }
            }
        }
    }

    pub fn eval(&self, n: i64) -> T {
        match self.basis {
            Basis::Monomial => {
                let x = T::from_i64(n);
                self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
            }
            Basis::Binomial => {
                let one = BigInt::one();
                self.coeffs.iter().enumerate().fold(T::zero(), |acc, (k, c)| {
                    acc + c.clone() * T::from_ratio(&binom_int(n, k), &one)
                })
            }
        }
    }

    /// `ℓ ↦ P(n0 + ℓ)`, in binomial basis.
    pub fn shifted(&self, n0: i64) -> Self {
        let b = self.to_binomial_basis();
        let d = b.degree();
        let one = BigInt::one();
        // binom(n0 + ℓ, j) = Σ_i binom(n0, j − i) binom(ℓ, i).
        let coeffs = (0..=d)
            .map(|i| {
                (i..=d).fold(T::zero(), |acc, j| {
                    acc + b.coeffs[j].clone() * T::from_ratio(&binom_int(n0, j - i), &one)
                })
            })
            .collect();
        PolynomialPhase {
            coeffs,
            basis: Basis::Binomial,
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        PolynomialPhase {
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
            basis: self.basis,
        }
    }

    /// Sum in the basis of `self`; `other` is converted if needed.
    pub fn add(&self, other: &Self) -> Self {
        let other = match (self.basis, other.basis) {
            (a, b) if a == b => other.clone(),
            (Basis::Monomial, _) => other.to_monomial_basis(),
            (Basis::Binomial, _) => other.to_binomial_basis(),
        };
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &Vec<T>, i: usize| v.get(i).cloned().unwrap_or_else(T::zero);
        PolynomialPhase {
            coeffs: (0..len).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect(),
            basis: self.basis,
        }
    }
}

/// `‖P(n0 + ·)‖_{C∞([1, L])} = sup_{1≤j≤d} L^j ‖β_j‖_{R/Z}` where `β_j` are the
/// binomial coefficients of the shifted polynomial.
pub fn smoothness_norm<T: Scalar>(p: &PolynomialPhase<T>, n0: i64, len: u64) -> Result<f64, NilError> {
    if len == 0 {
        return Err(NilError::InvalidArgument("interval length must be at least 1"));
    }
    let b = if n0 == 0 { p.to_binomial_basis() } else { p.shifted(n0) };
    let l = len as f64;
    Ok(b.coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| libm::pow(l, j as f64) * c.dist_to_int())
        .fold(0.0, f64::max))
}
