use thiserror::Error;

use crate::counting::CountingError;
use crate::expsum::ExpSumError;
use crate::majorant::MajorantError;
use crate::nilseq::NilError;
use crate::ps_core::PsError;
use crate::sieve::SieveError;

/// Coarse classification used by front ends (the CLI maps it to exit codes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    InvalidInput,
    Precision,
    Capacity,
    Assertion,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Ps(#[from] PsError),
    #[error(transparent)]
    Sieve(#[from] SieveError),
    #[error(transparent)]
    ExpSum(#[from] ExpSumError),
    #[error(transparent)]
    Nil(#[from] NilError),
    #[error(transparent)]
    Counting(#[from] CountingError),
    #[error(transparent)]
    Majorant(#[from] MajorantError),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Ps(PsError::PrecisionExhausted { .. }) => ErrorKind::Precision,
            Error::Ps(_) => ErrorKind::InvalidInput,
            Error::Sieve(SieveError::CapacityExceeded { .. }) => ErrorKind::Capacity,
            Error::Sieve(_) => ErrorKind::InvalidInput,
            Error::ExpSum(e) => e.kind(),
            Error::Nil(_) => ErrorKind::InvalidInput,
            Error::Counting(e) => e.kind(),
            Error::Majorant(e) => e.kind(),
        }
    }
}
