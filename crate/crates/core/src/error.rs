use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("signature entry {entry} does not divide the ambient level {m}")]
    InvalidEntry { entry: u64, m: u64 },
    #[error("element is not fixed by the subgroup defining the trace field")]
    NotInSubfield,
    #[error("unsupported prime {ell}: {reason}")]
    UnsupportedPrime { ell: u64, reason: String },
    #[error("cannot reduce modulo {ell}: {reason}")]
    Reduction { ell: u64, reason: String },
    #[error("quotient construction failed: {0}")]
    Construction(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSignature(_) | Error::InvalidArgument(_) | Error::InvalidEntry { .. } => 2,
            Error::UnsupportedPrime { .. } | Error::Reduction { .. } => 3,
            Error::ResourceLimit(_) => 4,
            Error::NotInSubfield
            | Error::Construction(_)
            | Error::Io(_)
            | Error::Internal(_) => 1,
        }
    }

    pub(crate) fn unsupported(ell: u64, reason: impl Into<String>) -> Self {
        Error::UnsupportedPrime {
            ell,
            reason: reason.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
