use std::fmt;
use std::process::ExitCode;
use stieltjes_core::error::Error;

/// Everything that ends a run early, mapped onto the exit-code contract:
/// 0 success, 1 verification failure, 2 usage or domain error, 3 non-convergence.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
    Verification { failed: usize, convergence: bool },
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_convergence_failure() => 3,
            CliError::Core(_) => 2,
            CliError::Verification { convergence: true, .. } => 3,
            CliError::Verification { .. } | CliError::Io(_) => 1,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Verification { failed, convergence } => {
                write!(f, "{failed} verification case(s) failed")?;
                if *convergence {
                    write!(f, ", some through non-convergence")?;
                }
                Ok(())
            }
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
