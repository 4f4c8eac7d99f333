//! File formats, reports and command implementations behind the `stacky` binary.

pub mod commands;
pub mod corpus;
pub mod document;
pub mod report;

pub use document::InputDocument;

/// Failures of a CLI invocation, grouped by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("ParseError: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(#[from] stacky_core::Error),
    #[error("PreconditionFailed: {0}")]
    Precondition(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Invalid(_) | CliError::Precondition(_) => 2,
        }
    }

    /// The violated invariant, e.g. `DependentGenerators`.
    pub fn kind(&self) -> String {
        match self {
            CliError::Parse(_) => "ParseError".into(),
            CliError::Precondition(_) => "PreconditionFailed".into(),
            CliError::Invalid(e) => format!("{e:?}").split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string(),
        }
    }
}
