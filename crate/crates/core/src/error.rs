use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("duplicate generator {0}")]
    DuplicateGenerator(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("unsupported presentation: {0}")]
    Unsupported(String),
    #[error("quadratic part not nilpotent: generators {0:?} never enter the filtration")]
    NotNilpotent(Vec<String>),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("validation failed:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),
}
