//! Numerical workbench for linear equations in Piatetski-Shapiro primes.
//!
//! The crate is `no_std` (it needs `alloc`) and contains every algorithm:
//! certified membership in `PS_{1/γ}`, segmented sieving for the von Mangoldt
//! function, compensated exponential sums, sawtooth approximations and the
//! classical inequalities around them, polynomial phases and nilsequences on
//! tori and the Heisenberg nilmanifold, weighted counts over affine-linear
//! systems, Gowers norms, and the truncated-divisor-sum majorant ν.
//!
//! IO, caching, parallel execution and the command line live in the `pslab`
//! crate. Heavy kernels here take an [`Executor`] so that the companion crate
//! can run them on a thread pool while keeping the reduction order fixed.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod counting;
pub mod executor;
pub mod expsum;
pub mod majorant;
pub mod nilseq;
pub mod numeric;
pub mod ps_core;
pub mod sieve;

mod error;

pub use error::{Error, ErrorKind};
pub use executor::{Executor, Sequential};
pub use num_complex::Complex64;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
