//! `‖f‖_{U^s(Z_N)}` by brute force over all `(x, h_1, …, h_s)`.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::CountingError;
use crate::executor::Executor;
use crate::numeric::{pairwise_reduce, ComplexAccumulator};

/// Upper limit on `N^{s+1}`.
pub const MAX_GOWERS_WORK: f64 = 1e9;
const RESIDUE_TOLERANCE: f64 = 1e-10;

pub fn gowers_norm(f: &[Complex64], s: u32) -> Result<f64, CountingError> {
    gowers_norm_with(&crate::Sequential, f, s)
}

/// `g ↦ Δ_h g`, `Δ_h g(x) = g(x) · conj(g(x + h))` on `Z_N`.
fn derivative(g: &[Complex64], h: usize, out: &mut [Complex64]) {
    let n = g.len();
    for x in 0..n {
        let y = if x + h >= n { x + h - n } else { x + h };
        out[x] = g[x] * g[y].conj();
    }
}

/// Sums `Σ_{h_{j+1..s}} Σ_x Δ_{h_{j+1}} … Δ_{h_s} g(x)` depth first.
fn descend(g: &[Complex64], depth: u32, scratch: &mut [Vec<Complex64>], acc: &mut ComplexAccumulator) {
    if depth == 0 {
        let mut inner = ComplexAccumulator::new();
        for &v in g {
            inner.add(v);
        }
        acc.add(inner.total());
        return;
    }
    let (head, tail) = scratch.split_first_mut().expect("scratch depth");
    for h in 0..g.len() {
        derivative(g, h, head);
        descend(head, depth - 1, tail, acc);
    }
}

/// `(E_{x,h} ∏_{ω∈{0,1}^s} C^{|ω|} f(x + ω·h))^{1/2^s}`; the work is split
/// over `h_1`.
pub fn gowers_norm_with<E: Executor>(exec: &E, f: &[Complex64], s: u32) -> Result<f64, CountingError> {
    let n = f.len();
    if n == 0 || s == 0 {
        return Err(CountingError::InvalidArgument("need N ≥ 1 and s ≥ 1"));
    }
    if libm::pow(n as f64, s as f64 + 1.0) > MAX_GOWERS_WORK {
        return Err(CountingError::InvalidArgument("N^{s+1} exceeds 10^9"));
    }
    let parts: Vec<Complex64> = exec.map_indexed(n, |h1| {
        let mut first = vec![Complex64::new(0.0, 0.0); n];
        derivative(f, h1, &mut first);
        let mut scratch = vec![vec![Complex64::new(0.0, 0.0); n]; s as usize - 1];
        let mut acc = ComplexAccumulator::new();
        descend(&first, s - 1, &mut scratch, &mut acc);
        acc.total()
    });
    let total = pairwise_reduce(&parts, Complex64::new(0.0, 0.0), |a, b| a + b);
    let mean = total / libm::pow(n as f64, s as f64 + 1.0);
    let scale = f.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let scale = libm::pow(scale, libm::ldexp(1.0, s as i32)).max(1.0);
    if libm::fabs(mean.im) > RESIDUE_TOLERANCE * scale {
        return Err(CountingError::ImaginaryResidue(mean.im));
    }
    Ok(libm::pow(mean.re.max(0.0), libm::ldexp(1.0, -(s as i32))))
}
