use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of the gamma function at {0}")]
    Pole(Complex64),
    #[error("argument {0} lies on the branch cut [1, inf) of 2F1")]
    BranchCut(Complex64),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unbounded: {0}")]
    Unbounded(String),
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("principal value does not stabilise: {0}")]
    PvDivergence(String),
    #[error("no convergence: {0}")]
    NonConvergence(String),
}

impl Error {
    /// True for failures of an iterative or adaptive procedure, as opposed to
    /// inputs that violate a precondition.
    pub fn is_convergence_failure(&self) -> bool {
        matches!(self, Error::NonConvergence(_) | Error::PvDivergence(_))
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Collects the first error raised inside an integrand, which can only
/// return plain numbers to the quadrature engine.
#[derive(Debug, Default)]
pub(crate) struct ErrorSlot(std::sync::Mutex<Option<Error>>);

impl ErrorSlot {
    /// Unwraps `r`, or records its error and returns `fallback`.
    pub(crate) fn catch<T>(&self, r: Result<T>, fallback: T) -> T {
        match r {
            Ok(v) => v,
            Err(e) => {
                let mut slot = self.0.lock().unwrap_or_else(|p| p.into_inner());
                if slot.is_none() {
                    *slot = Some(e);
                }
                fallback
            }
        }
    }

    pub(crate) fn check(self) -> Result<()> {
        match self.0.into_inner().unwrap_or_else(|p| p.into_inner()) {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }
}
