use packing_core::Error as CoreError;
use thiserror::Error;

/// Command failure, carrying its process exit status.
#[derive(Error, Debug)]
pub enum CliError {
    #[error("{0}")]
    Mismatch(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("geometric degeneracy: {0}")]
    Degenerate(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Invalid(_) | CliError::Io(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NonFinite
            | CoreError::SingularBasis(_)
            | CoreError::OverlappingSpheres(_)
            | CoreError::NonPositive(_)
            | CoreError::TooFewSamples(_)
            | CoreError::EdgeTooShort(_)
            | CoreError::HeightTooShort(_) => CliError::Invalid(e.to_string()),
            CoreError::DegenerateInput(_)
            | CoreError::Unbounded
            | CoreError::InfeasibleInterior { .. }
            | CoreError::InvalidPolyhedron(_)
            | CoreError::CenterOutside => CliError::Degenerate(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
