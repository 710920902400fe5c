use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::ExpSumError;
use crate::nilseq::PolynomialPhase;
use crate::numeric::{e_dd, Dd};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseKind {
    Monomial,
    Polynomial,
    Mixed,
}

/// `f(n) = h·n^γ + P(n)` with either part possibly absent.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseFunction {
    kind: PhaseKind,
    h: f64,
    gamma: f64,
    /// Monomial coefficients of `P`.
    poly: Vec<f64>,
}

fn check_gamma(gamma: f64) -> Result<(), ExpSumError> {
    if !gamma.is_finite() || gamma == libm::round(gamma) {
        return Err(ExpSumError::InvalidArgument("γ must be finite and non-integer"));
    }
    Ok(())
}

impl PhaseFunction {
    pub fn monomial(h: f64, gamma: f64) -> Result<Self, ExpSumError> {
        check_gamma(gamma)?;
        Ok(PhaseFunction {
            kind: PhaseKind::Monomial,
            h,
            gamma,
            poly: Vec::new(),
        })
    }

    pub fn polynomial(p: &PolynomialPhase<f64>) -> Self {
        PhaseFunction {
            kind: PhaseKind::Polynomial,
            h: 0.0,
            gamma: 0.5,
            poly: p.to_monomial_basis().coeffs().to_vec(),
        }
    }

    pub fn mixed(h: f64, gamma: f64, p: &PolynomialPhase<f64>) -> Result<Self, ExpSumError> {
        check_gamma(gamma)?;
        Ok(PhaseFunction {
            kind: PhaseKind::Mixed,
            h,
            gamma,
            poly: p.to_monomial_basis().coeffs().to_vec(),
        })
    }

    /// `f(n) = αn`.
    pub fn linear(alpha: f64) -> Self {
        PhaseFunction {
            kind: PhaseKind::Polynomial,
            h: 0.0,
            gamma: 0.5,
            poly: alloc::vec![0.0, alpha],
        }
    }

    pub fn kind(&self) -> PhaseKind {
        self.kind
    }

    fn has_power(&self) -> bool {
        self.kind != PhaseKind::Polynomial
    }

    /// `f(x)` in double-double, for `x > 0` when a power term is present.
    pub fn value_dd(&self, x: Dd) -> Dd {
        let mut v = Dd::ZERO;
        for &c in self.poly.iter().rev() {
            v = v * x + Dd::from_f64(c);
        }
        if self.has_power() && self.h != 0.0 {
            v = v + x.powf(self.gamma).mul_f64(self.h);
        }
        v
    }

    pub fn value_at(&self, n: i64) -> Dd {
        self.value_dd(Dd::from_i64(n))
    }

    /// `e(f(n))`, reducing the phase modulo 1 in double-double.
    pub fn term(&self, n: i64) -> Complex64 {
        e_dd(self.value_at(n))
    }

    pub fn value_f64(&self, x: f64) -> f64 {
        self.value_dd(Dd::from_f64(x)).to_f64()
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        let mut v = 0.0;
        for (j, &c) in self.poly.iter().enumerate().skip(2) {
            v += c * (j * (j - 1)) as f64 * libm::pow(x, (j - 2) as f64);
        }
        if self.has_power() {
            v += self.h * self.gamma * (self.gamma - 1.0) * libm::pow(x, self.gamma - 2.0);
        }
        v
    }

    pub fn descriptor(&self) -> String {
        let poly = self
            .poly
            .iter()
            .map(|c| format!("{c:e}"))
            .collect::<Vec<_>>()
            .join(";");
        match self.kind {
            PhaseKind::Monomial => format!("{:e}*n^{:e}", self.h, self.gamma),
            PhaseKind::Polynomial => format!("poly[{poly}]"),
            PhaseKind::Mixed => format!("{:e}*n^{:e}+poly[{poly}]", self.h, self.gamma),
        }
    }
}
