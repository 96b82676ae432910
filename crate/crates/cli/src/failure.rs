use std::fmt;
use std::process::ExitCode;

/// A command failure, tagged with the exit status it maps to.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unreadable input, malformed files: exit 1.
    Usage(anyhow::Error),
    /// Singular systems, non-finite results, failed suites: exit 2.
    Numerical(anyhow::Error),
}

impl Failure {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Failure::Usage(anyhow::anyhow!("{msg}"))
    }

    pub fn numerical(msg: impl fmt::Display) -> Self {
        Failure::Numerical(anyhow::anyhow!("{msg}"))
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            Failure::Usage(_) => ExitCode::from(1),
            Failure::Numerical(_) => ExitCode::from(2),
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(e) => write!(f, "error: {e:#}"),
            Failure::Numerical(e) => write!(f, "numerical failure: {e:#}"),
        }
    }
}

impl From<jacobi_spectral::Error> for Failure {
    fn from(e: jacobi_spectral::Error) -> Self {
        use jacobi_spectral::Error as E;
        match e {
            E::InvalidIndex { .. } | E::Domain(_) | E::Dimension { .. } => Failure::Usage(e.into()),
            _ => Failure::Numerical(e.into()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.into())
    }
}

pub type CmdResult<T> = Result<T, Failure>;
