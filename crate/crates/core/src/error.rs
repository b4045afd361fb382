use thiserror::Error;

/// Errors raised by the game model, strategies and the equilibrium engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("invalid game: {reason}{}", fmt_type(*type_id))]
    Validation {
        type_id: Option<usize>,
        reason: String,
    },
    #[error("strategy shape mismatch for type {type_id}: expected {expected} entries, found {found}")]
    Shape {
        type_id: usize,
        expected: usize,
        found: usize,
    },
    #[error("invalid distribution: {0}")]
    Distribution(String),
    #[error("no attackable vulnerability types")]
    EmptyActionSet,
    #[error("solver failure: {0}")]
    Solver(String),
}

fn fmt_type(type_id: Option<usize>) -> String {
    match type_id {
        Some(id) => format!(" (type {id})"),
        None => String::new(),
    }
}

impl GameError {
    pub(crate) fn invalid(type_id: impl Into<Option<usize>>, reason: impl Into<String>) -> Self {
        GameError::Validation {
            type_id: type_id.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = GameError> = std::result::Result<T, E>;
