use std::path::Path;

use finspace::causal::CausalError;
use finspace::discovery::GenotypeError;
use finspace::enumerate::EnumerateError;
use finspace::graphs::GraphError;
use finspace::SpaceError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed input file; `at` names the file and line or position.
    #[error("{at}: {message}")]
    Parse { at: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Causal(#[from] CausalError),
    #[error(transparent)]
    Genotype(#[from] GenotypeError),
    #[error(transparent)]
    Enumerate(#[from] EnumerateError),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn parse(at: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Parse {
            at: at.into(),
            message: message.into(),
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn from_json(origin: &str, e: serde_json::Error) -> Self {
        CliError::parse(format!("{origin}:{}:{}", e.line(), e.column()), e.to_string())
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}
