//! The Heisenberg group in Mal'cev coordinates `(x, y, z)` with
//! `(x, y, z)(x', y', z') = (x + x', y + y', z + z' + x y')`, the lattice
//! `Γ = Z³`, and degree-2 polynomial sequences `g(n) = g0 g1^n g2^{binom(n,2)}`.

use num_bigint::BigInt;

use crate::numeric::{Dd, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct HeisElem<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> HeisElem<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        HeisElem { x, y, z }
    }

    pub fn identity() -> Self {
        HeisElem::new(T::zero(), T::zero(), T::zero())
    }

    pub fn mul(&self, o: &Self) -> Self {
        HeisElem {
            x: self.x.clone() + o.x.clone(),
            y: self.y.clone() + o.y.clone(),
            z: self.z.clone() + o.z.clone() + self.x.clone() * o.y.clone(),
        }
    }

    pub fn inv(&self) -> Self {
        HeisElem {
            x: -self.x.clone(),
            y: -self.y.clone(),
            z: self.x.clone() * self.y.clone() - self.z.clone(),
        }
    }

    /// `g^k = (kx, ky, kz + binom(k,2) xy)`.
    pub fn pow(&self, k: i64) -> Self {
        let kk = T::from_i64(k);
        let c2 = T::from_ratio(&(BigInt::from(k) * (BigInt::from(k) - 1)), &BigInt::from(2));
        HeisElem {
            x: kk.clone() * self.x.clone(),
            y: kk.clone() * self.y.clone(),
            z: kk * self.z.clone() + c2 * self.x.clone() * self.y.clone(),
        }
    }

    pub fn is_central(&self) -> bool {
        self.x == T::zero() && self.y == T::zero()
    }

    /// Representative of `gΓ` in `[0,1)³`: right multiplication by
    /// `(a, b, c) ∈ Γ` sends `(x, y, z)` to `(x + a, y + b, z + c + x b)`, so the
    /// abelianized coordinates are reduced first and the central one last.
    pub fn reduce(&self) -> Self {
        let a = -self.x.floor();
        let b = -self.y.floor();
        let x = self.x.clone() + a;
        let y = self.y.clone() + b.clone();
        let z = self.z.clone() + self.x.clone() * b;
        let z = z.clone() - z.floor();
        HeisElem { x, y, z }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        [self.x.to_f64(), self.y.to_f64(), self.z.to_f64()]
    }
}

/// `n ↦ g0 g1^n g2^{binom(n,2)}` with `g2` central.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisenbergSequence<T> {
    pub g0: HeisElem<T>,
    pub g1: HeisElem<T>,
    pub g2: HeisElem<T>,
}

impl<T: Scalar> HeisenbergSequence<T> {
    /// Returns `None` unless `g2` lies in the center `G_2`.
    pub fn new(g0: HeisElem<T>, g1: HeisElem<T>, g2: HeisElem<T>) -> Option<Self> {
        g2.is_central().then_some(HeisenbergSequence { g0, g1, g2 })
    }

    /// `g(n)` in `G` (unreduced).
    pub fn element(&self, n: i64) -> HeisElem<T> {
        let c2 = (n as i128 * (n as i128 - 1) / 2) as i64;
        self.g0.mul(&self.g1.pow(n)).mul(&self.g2.pow(c2))
    }

    /// `g(n)Γ` in fundamental-domain coordinates.
    pub fn point(&self, n: i64) -> HeisElem<T> {
        self.element(n).reduce()
    }
}

/// Fundamental-domain coordinates of `g(n)Γ`, computed in double-double.
pub fn heisenberg_step(seq: &HeisenbergSequence<Dd>, n: i64) -> [f64; 3] {
    seq.point(n).to_f64()
}
