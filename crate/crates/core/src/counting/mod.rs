//! Weighted counts of integer points on affine-linear systems, local
//! densities, and brute-force Gowers norms.

mod count;
mod density;
mod gowers;
mod system;
mod weights;

pub use count::{count_weighted, count_weighted_with, goldbach3_count, goldbach3_count_with, kap_count, kap_count_with};
pub use density::{archimedean_density, local_density, predicted_main_term, singular_series, MAIN_TERM_PRIME_CUTOFF};
pub use gowers::{gowers_norm, gowers_norm_with, MAX_GOWERS_WORK};
pub use system::{AffineLinearSystem, ConvexBody};
pub use weights::{WeightKind, WeightTable};

use alloc::string::String;
use thiserror::Error;

use crate::ps_core::PsError;
use crate::ErrorKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CountingError {
    #[error("form value {value} lies outside the weight range [1, {hi}]")]
    RangeMismatch { value: i64, hi: i64 },
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
    #[error("Gowers average has imaginary residue {0:e}")]
    ImaginaryResidue(f64),
    #[error(transparent)]
    Ps(#[from] PsError),
}

impl CountingError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            CountingError::ImaginaryResidue(_) => ErrorKind::Assertion,
            CountingError::Ps(PsError::PrecisionExhausted { .. }) => ErrorKind::Precision,
            _ => ErrorKind::InvalidInput,
        }
    }
}
