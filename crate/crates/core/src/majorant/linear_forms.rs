use alloc::format;
use alloc::vec::Vec;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{MajorantError, NuTable};
use crate::counting::AffineLinearSystem;
use crate::executor::Executor;
use crate::numeric::{pairwise_reduce, Neumaier};

/// Largest `N^d` averaged exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000_000;
pub const MIN_SAMPLES: u64 = 10_000;
const LFA_CHUNK: u64 = 1 << 14;

/// Affine-linear forms `ψ_i(x) = Σ_j L_ij x_j + c_i` on `Z_N^d`, `d ≤ 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZnSystem {
    n: u64,
    linear: Vec<Vec<u64>>,
    constants: Vec<u64>,
}

fn reduce(v: i64, n: u64) -> u64 {
    v.rem_euclid(n as i64) as u64
}

impl ZnSystem {
    pub fn new(n: u64, linear: Vec<Vec<i64>>, constants: Vec<i64>) -> Result<Self, MajorantError> {
        if !(2..=1 << 40).contains(&n) {
            return Err(MajorantError::InvalidParams(format!("modulus {n} out of range")));
        }
        if linear.is_empty() || linear.len() != constants.len() {
            return Err(MajorantError::InvalidParams("need one constant per form".into()));
        }
        let d = linear[0].len();
        if d == 0 || d > 3 || linear.iter().any(|row| row.len() != d) {
            return Err(MajorantError::InvalidParams("forms must share a dimension 1 ≤ d ≤ 3".into()));
        }
        Ok(ZnSystem {
            n,
            linear: linear
                .iter()
                .map(|row| row.iter().map(|&a| reduce(a, n)).collect())
                .collect(),
            constants: constants.iter().map(|&c| reduce(c, n)).collect(),
        })
    }

    /// Reduces the coefficients of an integer system mod `N`.
    pub fn from_affine(sys: &AffineLinearSystem, n: u64) -> Result<Self, MajorantError> {
        ZnSystem::new(n, sys.linear().to_vec(), sys.constants().to_vec())
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.linear[0].len()
    }

    pub fn forms(&self) -> usize {
        self.linear.len()
    }

    #[inline]
    pub fn eval(&self, i: usize, x: &[u64]) -> u64 {
        let n = self.n as u128;
        let mut acc = self.constants[i] as u128;
        for (a, &xj) in self.linear[i].iter().zip(x) {
            acc += *a as u128 * xj as u128;
        }
        (acc % n) as u64
    }

    #[inline]
    fn weight(&self, nu: &NuTable, x: &[u64]) -> f64 {
        let mut p = 1.0;
        for i in 0..self.forms() {
            p *= nu.get(self.eval(i, x));
            if p == 0.0 {
                break;
            }
        }
        p
    }

    pub fn descriptor(&self) -> alloc::string::String {
        let rows: Vec<alloc::string::String> = self
            .linear
            .iter()
            .zip(&self.constants)
            .map(|(row, c)| {
                let coeffs: Vec<alloc::string::String> = row.iter().map(|a| format!("{a}")).collect();
                format!("[{}|{}]", coeffs.join(" "), c)
            })
            .collect();
        format!("Z_{}^{}:{}", self.n, self.dim(), rows.join(""))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearFormsEstimate {
    pub average: f64,
    /// `0` for an exhaustive average.
    pub std_error: f64,
    pub exhaustive: bool,
    pub samples: u64,
}

/// `E_{x ∈ Z_N^d} Π_i ν(ψ_i(x))`.
pub fn linear_forms_average(
    sys: &ZnSystem,
    nu: &NuTable,
    samples: u64,
    seed: u64,
) -> Result<LinearFormsEstimate, MajorantError> {
    linear_forms_average_with(&crate::Sequential, sys, nu, samples, seed)
}

/// [`linear_forms_average`] on an executor. Exhaustive when `N^d ≤`
/// [`EXHAUSTIVE_LIMIT`]; otherwise `samples` uniform points, drawn in fixed
/// chunks each with its own ChaCha8 stream so the estimate does not depend
/// on the thread count.
pub fn linear_forms_average_with<E: Executor>(
    exec: &E,
    sys: &ZnSystem,
    nu: &NuTable,
    samples: u64,
    seed: u64,
) -> Result<LinearFormsEstimate, MajorantError> {
    let n = sys.modulus();
    if nu.modulus() != n {
        return Err(MajorantError::InvalidParams(format!(
            "ν lives on Z_{} but the system on Z_{}",
            nu.modulus(),
            n
        )));
    }
    let d = sys.dim() as u32;
    let total = n.checked_pow(d).filter(|&t| t <= EXHAUSTIVE_LIMIT);
    if let Some(total) = total {
        let chunks = total.div_ceil(LFA_CHUNK) as usize;
        let parts = exec.map_indexed(chunks, |c| {
            let a = c as u64 * LFA_CHUNK;
            let b = (a + LFA_CHUNK).min(total);
            let mut x = [0u64; 3];
            let mut acc = Neumaier::new();
            for idx in a..b {
                let mut r = idx;
                for xj in x.iter_mut().take(d as usize) {
                    *xj = r % n;
                    r /= n;
                }
                acc.add(sys.weight(nu, &x[..d as usize]));
            }
            acc.total()
        });
        let sum = pairwise_reduce(&parts, 0.0, |a, b| a + b);
        return Ok(LinearFormsEstimate {
            average: sum / total as f64,
            std_error: 0.0,
            exhaustive: true,
            samples: total,
        });
    }
    if samples < MIN_SAMPLES {
        return Err(MajorantError::InvalidParams(format!(
            "Monte Carlo needs at least {MIN_SAMPLES} samples"
        )));
    }
    let chunks = samples.div_ceil(LFA_CHUNK) as usize;
    let parts = exec.map_indexed(chunks, |c| {
        let a = c as u64 * LFA_CHUNK;
        let b = (a + LFA_CHUNK).min(samples);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(c as u64);
        let mut x = [0u64; 3];
        let mut s1 = Neumaier::new();
        let mut s2 = Neumaier::new();
        for _ in a..b {
            for xj in x.iter_mut().take(d as usize) {
                *xj = uniform_below(&mut rng, n);
            }
            let w = sys.weight(nu, &x[..d as usize]);
            s1.add(w);
            s2.add(w * w);
        }
        (s1.total(), s2.total())
    });
    let (s1, s2) = pairwise_reduce(&parts, (0.0, 0.0), |a, b| (a.0 + b.0, a.1 + b.1));
    let k = samples as f64;
    let mean = s1 / k;
    let var = ((s2 - k * mean * mean) / (k - 1.0)).max(0.0);
    Ok(LinearFormsEstimate {
        average: mean,
        std_error: libm::sqrt(var / k),
        exhaustive: false,
        samples,
    })
}

/// Unbiased draw from `[0, n)` by widening multiply with rejection.
fn uniform_below<R: RngCore>(rng: &mut R, n: u64) -> u64 {
    let threshold = n.wrapping_neg() % n;
    loop {
        let m = rng.next_u64() as u128 * n as u128;
        if (m as u64) >= threshold {
            return (m >> 64) as u64;
        }
    }
}
