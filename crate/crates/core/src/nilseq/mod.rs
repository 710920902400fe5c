//! Polynomial phases, smoothness norms, and nilsequences on tori and on the
//! Heisenberg nilmanifold.
//!
//! Distances on `G/Γ` use a Mal'cev-coordinate surrogate (see [`distance`]);
//! every Lipschitz constant reported here is relative to that choice.

mod heisenberg;
mod polynomial;

pub use heisenberg::{heisenberg_step, HeisElem, HeisenbergSequence};
pub use polynomial::{binom_int, smoothness_norm, Basis, PolynomialPhase, MAX_DEGREE};

use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;
use thiserror::Error;

use crate::numeric::{dist_to_int, e, frac, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilError {
    #[error("degree {0} exceeds the supported maximum of 64")]
    DegreeTooLarge(usize),
    #[error("character pairs nontrivially with the center")]
    InvalidCharacter,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NilKind {
    Torus { dim: usize },
    Heisenberg,
}

/// A supported filtered nilmanifold with its declared degree and complexity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NilManifold {
    pub kind: NilKind,
    pub degree: usize,
    /// `1/δ`.
    pub complexity: f64,
}

impl NilManifold {
    pub fn torus(dim: usize, degree: usize) -> Self {
        NilManifold {
            kind: NilKind::Torus { dim },
            degree,
            complexity: 1.0,
        }
    }

    pub fn heisenberg() -> Self {
        NilManifold {
            kind: NilKind::Heisenberg,
            degree: 2,
            complexity: 1.0,
        }
    }

    pub fn dimension(&self) -> usize {
        match self.kind {
            NilKind::Torus { dim } => dim,
            NilKind::Heisenberg => 3,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.kind, NilKind::Torus { .. })
    }
}

/// A point of `G/Γ` in fundamental-domain coordinates `[0,1)^D`.
#[derive(Debug, Clone, PartialEq)]
pub enum NilState {
    Torus(Vec<f64>),
    /// `(x, y, z)`; `z` is the central coordinate.
    Heisenberg([f64; 3]),
}

impl NilState {
    pub fn torus(coords: &[f64]) -> Self {
        NilState::Torus(coords.iter().map(|&c| frac(c)).collect())
    }

    pub fn heisenberg(x: f64, y: f64, z: f64) -> Self {
        let r = HeisElem::new(x, y, z).reduce();
        NilState::Heisenberg([r.x, r.y, r.z])
    }

    pub fn coords(&self) -> &[f64] {
        match self {
            NilState::Torus(c) => c,
            NilState::Heisenberg(c) => c,
        }
    }
}

/// A polynomial sequence on a torus: one phase per coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusSequence<T> {
    pub coords: Vec<PolynomialPhase<T>>,
}

impl<T: Scalar> TorusSequence<T> {
    pub fn point(&self, n: i64) -> NilState {
        NilState::Torus(
            self.coords
                .iter()
                .map(|p| {
                    let v = p.eval(n);
                    (v.clone() - v.floor()).to_f64()
                })
                .collect(),
        )
    }
}

/// `k · (abelianized coordinates) mod 1`. For the Heisenberg group `k` has two
/// entries, or three with a zero central entry.
pub fn horizontal_character(k: &[i64], state: &NilState) -> Result<f64, NilError> {
    let coords = state.coords();
    let horizontal = match state {
        NilState::Torus(_) => {
            if k.len() != coords.len() {
                return Err(NilError::DimensionMismatch {
                    expected: coords.len(),
                    got: k.len(),
                });
            }
            coords
        }
        NilState::Heisenberg(_) => {
            check_heisenberg_character(k)?;
            &coords[..2]
        }
    };
    let s: f64 = k.iter().zip(horizontal).map(|(&ki, &c)| ki as f64 * c).sum();
    Ok(frac(s))
}

fn check_heisenberg_character(k: &[i64]) -> Result<(), NilError> {
    match k.len() {
        2 => Ok(()),
        3 if k[2] == 0 => Ok(()),
        3 => Err(NilError::InvalidCharacter),
        got => Err(NilError::DimensionMismatch { expected: 2, got }),
    }
}

/// The character applied to a Heisenberg element (exact in rational mode).
pub fn heisenberg_character<T: Scalar>(k: &[i64], g: &HeisElem<T>) -> Result<T, NilError> {
    check_heisenberg_character(k)?;
    Ok(T::from_i64(k[0]) * g.x.clone() + T::from_i64(k[1]) * g.y.clone())
}

/// `χ∘g` for a Heisenberg sequence: `n ↦ k1 (x0 + n x1) + k2 (y0 + n y1)`; the
/// central factor `g2` does not contribute.
pub fn heisenberg_character_phase<T: Scalar>(
    k: &[i64],
    seq: &HeisenbergSequence<T>,
) -> Result<PolynomialPhase<T>, NilError> {
    let c0 = heisenberg_character(k, &seq.g0)?;
    let c1 = heisenberg_character(k, &seq.g1)?;
    PolynomialPhase::monomial(alloc::vec![c0, c1])
}

/// `χ∘g = Σ k_i P_i` for a torus sequence.
pub fn torus_character_phase<T: Scalar>(k: &[i64], seq: &TorusSequence<T>) -> Result<PolynomialPhase<T>, NilError> {
    if k.len() != seq.coords.len() {
        return Err(NilError::DimensionMismatch {
            expected: seq.coords.len(),
            got: k.len(),
        });
    }
    let mut acc = PolynomialPhase::zero();
    for (&ki, p) in k.iter().zip(&seq.coords) {
        acc = acc.add(&p.to_monomial_basis().scale(&T::from_i64(ki)));
    }
    Ok(acc)
}

/// Surrogate metric on `G/Γ`.
///
/// Torus: `max_i ‖x_i − y_i‖_{R/Z}`. Heisenberg: the minimum over lattice
/// shifts `(a, b) ∈ {−1,0,1}²` of `max(|Δx|, |Δy|, ‖Δz‖_{R/Z})`, where `Δ` are
/// the coordinates of `p⁻¹ · q(a, b, 0)`.
pub fn distance(p: &NilState, q: &NilState) -> Result<f64, NilError> {
    match (p, q) {
        (NilState::Torus(a), NilState::Torus(b)) => {
            if a.len() != b.len() {
                return Err(NilError::DimensionMismatch {
                    expected: a.len(),
                    got: b.len(),
                });
            }
            Ok(a.iter().zip(b).map(|(x, y)| dist_to_int(x - y)).fold(0.0, f64::max))
        }
        (NilState::Heisenberg(a), NilState::Heisenberg(b)) => {
            let [x, y, z] = *a;
            let [x2, y2, z2] = *b;
            let mut best = f64::INFINITY;
            for sa in [-1.0, 0.0, 1.0] {
                for sb in [-1.0, 0.0, 1.0] {
                    let (rx, ry, rz) = (x2 + sa, y2 + sb, z2 + x2 * sb);
                    let dx = rx - x;
                    let dy = ry - y;
                    let dz = rz - z - x * dy;
                    best = best.min(libm::fabs(dx).max(libm::fabs(dy)).max(dist_to_int(dz)));
                }
            }
            Ok(best)
        }
        _ => Err(NilError::InvalidArgument("points live on different nilmanifolds")),
    }
}

/// Built-in Lipschitz functions on the supported nilmanifolds.
#[derive(Debug, Clone, PartialEq)]
pub enum LipschitzFn {
    /// `F ≡ 1`.
    Constant,
    /// `F(x) = e(k · x)` on a torus.
    TorusCharacter(Vec<i64>),
    /// `F(x, y, z) = e(k z) · sin²(π y)` on the Heisenberg nilmanifold; the
    /// bump in `y` makes `F` continuous across the gluing `(x,1,z) ~ (x,0,z−x)`.
    HeisenbergVertical { k: i64 },
}

impl LipschitzFn {
    /// Lipschitz constant with respect to [`distance`]: `1` for constants (the
    /// sup-norm part of the Lipschitz norm), `2π Σ|k_i|` for torus characters,
    /// and `4π|k| + π` for the vertical function (the central coordinate of
    /// `p⁻¹q` differs from `Δz` by at most `|Δy|`).
    pub fn constant(&self) -> f64 {
        match self {
            LipschitzFn::Constant => 1.0,
            LipschitzFn::TorusCharacter(k) => 2.0 * PI * k.iter().map(|v| v.unsigned_abs() as f64).sum::<f64>(),
            LipschitzFn::HeisenbergVertical { k } => 4.0 * PI * k.unsigned_abs() as f64 + PI,
        }
    }
}

pub fn lipschitz_eval(f: &LipschitzFn, state: &NilState) -> Result<Complex64, NilError> {
    match (f, state) {
        (LipschitzFn::Constant, _) => Ok(Complex64::new(1.0, 0.0)),
        (LipschitzFn::TorusCharacter(k), NilState::Torus(c)) => {
            if k.len() != c.len() {
                return Err(NilError::DimensionMismatch {
                    expected: c.len(),
                    got: k.len(),
                });
            }
            let s: f64 = k.iter().zip(c).map(|(&ki, &ci)| frac(ki as f64 * ci)).sum();
            Ok(e(s))
        }
        (LipschitzFn::HeisenbergVertical { k }, NilState::Heisenberg([_, y, z])) => {
            let s = libm::sin(PI * y);
            Ok(e(frac(*k as f64 * z)) * (s * s))
        }
        _ => Err(NilError::InvalidArgument("function and state live on different nilmanifolds")),
    }
}
