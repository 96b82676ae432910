use core::fmt;

/// Errors raised by the spectral routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A Jacobi index with `alpha <= -1` or `beta <= -1`.
    InvalidIndex { alpha: f64, beta: f64 },
    /// An argument outside the domain of the routine.
    Domain(&'static str),
    /// Two sizes that must agree do not.
    Dimension { expected: usize, found: usize },
    /// An oracle that only exists for integer Jacobi indices or small degrees.
    UnsupportedOracle(&'static str),
    /// A coefficient vector tagged with a basis the routine cannot handle.
    BasisMismatch,
    /// LU factorization hit a zero pivot.
    Singular { l: usize, n_r: usize },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidIndex { alpha, beta } => {
                write!(f, "invalid Jacobi index ({alpha}, {beta}): both must exceed -1")
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Dimension { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::UnsupportedOracle(msg) => write!(f, "unsupported oracle: {msg}"),
            Error::BasisMismatch => write!(f, "coefficient basis does not match the operation"),
            Error::Singular { l, n_r } => {
                write!(f, "singular radial system for l = {l}, N_r = {n_r}")
            }
        }
    }
}

impl core::error::Error for Error {}
