use honeyflow_core::GameError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid topology: {0}")]
    Topology(String),
    #[error("invalid flow configuration: {0}")]
    Config(String),
    #[error("no observed flows of type {type_id}")]
    EmptyObservation { type_id: usize },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("topology JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("report output: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = SimError> = std::result::Result<T, E>;
