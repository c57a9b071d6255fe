use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CcrError {
    #[error("elements belong to different groups")]
    GroupMismatch,
    #[error("map does not preserve the pairing on generators {i}, {j}: expected {expected}·π, found {found}·π")]
    NotPresymplectic { i: usize, j: usize, expected: String, found: String },
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error(transparent)]
    Model(#[from] gaugeloc::Error),
}

pub type Result<T> = std::result::Result<T, CcrError>;
