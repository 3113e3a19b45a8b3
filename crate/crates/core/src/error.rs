use std::fmt;

/// Coarse classification of [`Error`], stable across versions and cheap to copy.
///
/// The command-line front end maps each kind onto its own exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorKind {
    InvalidArgument,
    Domain,
    NoUndampedRoot,
    Convergence,
    NumericalBlowup,
    NoCollectivePeak,
    Io,
}

impl ErrorKind {
    /// Machine-readable identifier, e.g. `"no-undamped-root"`.
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::InvalidArgument => "invalid-argument",
            ErrorKind::Domain => "domain",
            ErrorKind::NoUndampedRoot => "no-undamped-root",
            ErrorKind::Convergence => "convergence",
            ErrorKind::NumericalBlowup => "numerical-blowup",
            ErrorKind::NoCollectivePeak => "no-collective-peak",
            ErrorKind::Io => "io",
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The kernel was evaluated on or inside the particle-hole continuum.
    #[error("phase velocity S = {s} is not above the continuum edge S = 1")]
    Domain { s: f64 },

    #[error("no undamped root for coupling A = {coupling} (requires A > 0)")]
    NoUndampedRoot { coupling: f64 },

    /// Root refinement stopped without meeting the tolerance. The bracket is
    /// given in the logarithmic working variable `ln(S - 1)` for the
    /// dispersion solver and in `S` for the discrete secular solver.
    #[error("root refinement did not converge after {iterations} iterations (best bracket [{lower}, {upper}], residual {residual:e})")]
    Convergence {
        iterations: usize,
        lower: f64,
        upper: f64,
        residual: f64,
    },

    #[error("non-finite state at step {step} of the time evolution")]
    NumericalBlowup { step: usize },

    #[error("no spectral peak above the continuum band exceeds the noise floor")]
    NoCollectivePeak,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidArgument(_) => ErrorKind::InvalidArgument,
            Error::Domain { .. } => ErrorKind::Domain,
            Error::NoUndampedRoot { .. } => ErrorKind::NoUndampedRoot,
            Error::Convergence { .. } => ErrorKind::Convergence,
            Error::NumericalBlowup { .. } => ErrorKind::NumericalBlowup,
            Error::NoCollectivePeak => ErrorKind::NoCollectivePeak,
            Error::Io(_) => ErrorKind::Io,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
