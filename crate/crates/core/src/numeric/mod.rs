//! Floating-point building blocks shared by the analytic modules.

mod compensated;
mod dd;
mod scalar;
mod turns;

pub use compensated::{pairwise_reduce, reduce_f64, ComplexAccumulator, Neumaier};
pub use dd::Dd;
pub use scalar::Scalar;
pub use turns::{e, e_dd, dist_to_int, frac, sawtooth, sincos_turns};
