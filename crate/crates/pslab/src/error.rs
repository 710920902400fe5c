use pslab_core::ErrorKind;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] pslab_core::Error),
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

/// Exit statuses: 2 configuration, 3 precision exhausted, 4 capacity
/// exceeded, 5 failed assertion; 1 for I/O failures.
impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 1,
            CliError::Core(e) => match e.kind() {
                ErrorKind::InvalidInput => 2,
                ErrorKind::Precision => 3,
                ErrorKind::Capacity => 4,
                ErrorKind::Assertion => 5,
            },
        }
    }
}

macro_rules! from_core {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Core(e.into())
            }
        }
    )*};
}

from_core!(
    pslab_core::ps_core::PsError,
    pslab_core::sieve::SieveError,
    pslab_core::expsum::ExpSumError,
    pslab_core::nilseq::NilError,
    pslab_core::counting::CountingError,
    pslab_core::majorant::MajorantError
);
