//! Weighted PS-prime sums against additive phases and nilsequences, and the
//! fractional-part concentration count.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::{ExpSumError, PhaseFunction, SUM_CHUNK};
use crate::executor::Executor;
use crate::nilseq::{lipschitz_eval, HeisenbergSequence, LipschitzFn, NilError, NilState, PolynomialPhase, TorusSequence};
use crate::numeric::{pairwise_reduce, ComplexAccumulator, Dd};
use crate::ps_core::{lambda_gamma_factor, PsParameter, PsSet};
use crate::sieve::LambdaTable;

/// The twisting sequence `n ↦ e(g(n))` or `n ↦ F(g(n)Γ)`.
#[derive(Debug, Clone, PartialEq)]
pub enum Twist {
    Phase(PhaseFunction),
    Torus { seq: TorusSequence<f64>, f: LipschitzFn },
    Heisenberg { seq: HeisenbergSequence<Dd>, f: LipschitzFn },
}

impl Twist {
    /// Checks that `f` lives on the same nilmanifold as the sequence.
    pub fn validate(&self) -> Result<(), NilError> {
        match self {
            Twist::Phase(_) => Ok(()),
            Twist::Torus { seq, f } => lipschitz_eval(f, &seq.point(1)).map(|_| ()),
            Twist::Heisenberg { seq, f } => {
                lipschitz_eval(f, &NilState::Heisenberg(crate::nilseq::heisenberg_step(seq, 1))).map(|_| ())
            }
        }
    }

    pub fn value(&self, n: i64) -> Complex64 {
        match self {
            Twist::Phase(p) => p.term(n),
            Twist::Torus { seq, f } => lipschitz_eval(f, &seq.point(n)).unwrap_or_default(),
            Twist::Heisenberg { seq, f } => {
                lipschitz_eval(f, &NilState::Heisenberg(crate::nilseq::heisenberg_step(seq, n))).unwrap_or_default()
            }
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            Twist::Phase(p) => p.descriptor(),
            Twist::Torus { seq, f } => format!("torus{}:{:?}", seq.coords.len(), f),
            Twist::Heisenberg { seq, f } => format!(
                "heisenberg[g1=({:e},{:e},{:e}),g2z={:e}]:{:?}",
                seq.g1.x.to_f64(),
                seq.g1.y.to_f64(),
                seq.g1.z.to_f64(),
                seq.g2.z.to_f64(),
                f
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Discorrelation {
    pub n: u64,
    pub gamma: String,
    pub phase_descriptor: String,
    /// `(1/γ) Σ_{n≤N, n∈PS} n^{1−γ} Λ(n) e(g(n))`.
    pub s1: Complex64,
    /// `Σ_{n≤N} Λ(n) e(g(n))`.
    pub s2: Complex64,
    /// `|S1 − S2| / N`.
    pub delta: f64,
}

pub fn discorrelation(p: &PsParameter, n: u64, twist: &Twist, table: &LambdaTable) -> Result<Discorrelation, ExpSumError> {
    discorrelation_with(&crate::Sequential, p, n, twist, table)
}

pub fn discorrelation_with<E: Executor>(
    exec: &E,
    p: &PsParameter,
    n: u64,
    twist: &Twist,
    table: &LambdaTable,
) -> Result<Discorrelation, ExpSumError> {
    if n == 0 || n > 100_000_000 {
        return Err(ExpSumError::InvalidArgument("need 1 ≤ N ≤ 10^8"));
    }
    if table.lo() > 1 || table.hi() < n {
        return Err(ExpSumError::InvalidArgument("von Mangoldt table does not cover [1, N]"));
    }
    twist.validate().map_err(|_| ExpSumError::InvalidArgument("twist function does not match its sequence"))?;
    let ps = PsSet::build(exec, n, p)?;
    let gamma = p.gamma();
    let vals = table.values();
    let chunks = n.div_ceil(SUM_CHUNK) as usize;
    let parts: Vec<(Complex64, Complex64)> = exec.map_indexed(chunks, |i| {
        let a = 1 + i as u64 * SUM_CHUNK;
        let b = (a + SUM_CHUNK - 1).min(n);
        let mut s1 = ComplexAccumulator::new();
        let mut s2 = ComplexAccumulator::new();
        for m in a..=b {
            let lam = vals[(m - table.lo()) as usize];
            if lam == 0.0 {
                continue;
            }
            let t = twist.value(m as i64) * lam;
            s2.add(t);
            if ps.contains(m) {
                s1.add(t * lambda_gamma_factor(m, gamma));
            }
        }
        (s1.total(), s2.total())
    });
    let zero = Complex64::new(0.0, 0.0);
    let s1 = pairwise_reduce(&parts.iter().map(|v| v.0).collect::<Vec<_>>(), zero, |a, b| a + b);
    let s2 = pairwise_reduce(&parts.iter().map(|v| v.1).collect::<Vec<_>>(), zero, |a, b| a + b);
    Ok(Discorrelation {
        n,
        gamma: p.describe(),
        phase_descriptor: twist.descriptor(),
        s1,
        s2,
        delta: (s1 - s2).norm() / n as f64,
    })
}

/// `#{N < n ≤ 2N : A n^β + P(n) ∈ I + Z}` for `I = [a, b)` with `b − a ≤ 1`.
pub fn frac_concentration(
    a_coef: f64,
    beta: f64,
    poly: &PolynomialPhase<f64>,
    n: u64,
    interval: (f64, f64),
) -> Result<u64, ExpSumError> {
    let (a, b) = interval;
    let width = b - a;
    if !(0.0..=1.0).contains(&width) {
        return Err(ExpSumError::InvalidArgument("interval length must lie in [0, 1]"));
    }
    if n == 0 || n > (1 << 40) {
        return Err(ExpSumError::InvalidArgument("need 1 ≤ N ≤ 2^40"));
    }
    let f = PhaseFunction::mixed(a_coef, beta, poly)?;
    let shift = Dd::from_f64(-a);
    let count = (n + 1..=2 * n)
        .filter(|&m| width >= 1.0 || (f.value_at(m as i64) + shift).frac() < width)
        .count();
    Ok(count as u64)
}



#[cfg(test)]
mod tests {
    use super::*;
    use crate::sieve::SieveConfig;

    #[test]
    fn integer_phase_equals_trivial_phase() {
        let table = LambdaTable::build(&crate::Sequential, 1, 20_000, &SieveConfig::default()).unwrap();
        let p = PsParameter::exact(9, 10).unwrap();
        let zero = Twist::Phase(PhaseFunction::linear(0.0));
        let one = Twist::Phase(PhaseFunction::linear(1.0));
        let a = discorrelation(&p, 20_000, &zero, &table).unwrap();
        let b = discorrelation(&p, 20_000, &one, &table).unwrap();
        assert_eq!(a.s1, b.s1);
        assert_eq!(a.s2, b.s2);
        assert!(a.s2.im == 0.0 && (a.s2.re / 20_000.0 - 1.0).abs() < 0.05);
    }

    #[test]
    fn concentration_examples() {
        let zero = PolynomialPhase::zero();
        assert_eq!(frac_concentration(0.0, 0.5, &zero, 1000, (0.0, 0.01)).unwrap(), 1000);
        let n = 100_000u64;
        let beta = 0.7;
        let tiny = 1e-3 / libm::pow(n as f64, beta);
        assert_eq!(frac_concentration(tiny, beta, &zero, n, (-0.01, 0.01)).unwrap(), n);
        let big = 1e3 / libm::pow(n as f64, beta);
        let c = frac_concentration(big, beta, &zero, n, (0.3, 0.4)).unwrap() as f64;
        assert!((c / (0.1 * n as f64) - 1.0).abs() < 0.05);
    }
}
