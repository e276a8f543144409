use thiserror::Error;

/// Everything that ends a run early, with its process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Domain(airy_shift::Error),
    #[error("{0}")]
    Quadrature(airy_shift::Error),
    #[error("configuration: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("{0} case(s) failed")]
    VerifyFailed(usize),
}

impl From<airy_shift::Error> for CliError {
    fn from(e: airy_shift::Error) -> Self {
        if e.is_quadrature_failure() {
            CliError::Quadrature(e)
        } else {
            CliError::Domain(e)
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerifyFailed(_) => 1,
            CliError::Domain(_) | CliError::Config(_) => 2,
            CliError::Quadrature(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}
