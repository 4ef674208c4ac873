use std::io;

use pairkit::{FitError, InvError, MapError, OracleError, StorageError};
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("grid of {cells} cells exceeds the limit of {limit} (PAIRKIT_MAX_GRID)")]
    Oversize { cells: u128, limit: u128 },
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Singular(String),
    #[error("{0}")]
    VerifyFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Oversize { .. } | CliError::Io(_) => 1,
            CliError::Domain(_) => 2,
            CliError::Singular(_) => 3,
            CliError::VerifyFailed(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Oversize { .. } => "oversize",
            CliError::Io(_) => "io",
            CliError::Domain(_) => "domain",
            CliError::Singular(_) => "singular",
            CliError::VerifyFailed(_) => "verify_failed",
        }
    }

    pub fn to_json(&self) -> String {
        json!({ "error": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() }).to_string()
    }
}

impl From<MapError> for CliError {
    fn from(e: MapError) -> Self {
        match e {
            MapError::Domain(..) | MapError::NegativeCoordinate(_) | MapError::NonIntegral { .. } | MapError::OutsideImage { .. } => {
                CliError::Domain(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<InvError> for CliError {
    fn from(e: InvError) -> Self {
        match e {
            InvError::Map(m) => m.into(),
            other => CliError::Domain(other.to_string()),
        }
    }
}

impl From<FitError> for CliError {
    fn from(e: FitError) -> Self {
        match e {
            FitError::Singular { .. } => CliError::Singular(e.to_string()),
            FitError::SampleCount { .. } => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Map(m) => m.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<StorageError> for CliError {
    fn from(e: StorageError) -> Self {
        match e {
            StorageError::Io(io) => CliError::Io(io),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Usage(format!("csv: {e}"))
    }
}
