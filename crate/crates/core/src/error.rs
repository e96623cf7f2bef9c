use thiserror::Error;

/// Which truncated series failed to meet its tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    /// Angular-momentum sum at fixed Matsubara index.
    AngularMomentum { n: u64 },
    /// Matsubara frequency sum.
    Matsubara,
    /// Adaptive quadrature.
    Quadrature,
}

impl std::fmt::Display for SumKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SumKind::AngularMomentum { n } => write!(f, "l-sum at n = {n}"),
            SumKind::Matsubara => f.write_str("n-sum"),
            SumKind::Quadrature => f.write_str("quadrature"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("{kind} did not converge within {cap} terms (last tail estimate {tail:e})")]
    NonConvergence { kind: SumKind, cap: u64, tail: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
