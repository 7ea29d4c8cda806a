use std::path::PathBuf;

use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: JSON parse error at line {line}, column {column}: {message}")]
    Parse { path: String, line: usize, column: usize, message: String },
    #[error("schema error at `{key}`: {message}")]
    Schema { key: String, message: String },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] flatfront_core::Error),
    #[error("vertex ({i}, {j}) is not finite")]
    NonFiniteVertex { i: usize, j: usize },
    #[error("the caustic degenerates to a line (constant ruling, vanishing a and b); no surface to export")]
    DegenerateCausticExport,
    #[error("check failed: {}", failed.join(", "))]
    CheckFailed { failed: Vec<String> },
    #[error("{0}")]
    Usage(String),
}

/// Machine-readable error emitted on stderr.
#[derive(Debug, Serialize)]
pub struct ErrorJson {
    pub error: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub key: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub line: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub column: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failed: Vec<String>,
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Schema { .. } => "SchemaError",
            CliError::Io { .. } => "IOError",
            CliError::Core(e) => e.kind(),
            CliError::NonFiniteVertex { .. } => "NonFiniteVertex",
            CliError::DegenerateCausticExport => "DegenerateCausticExport",
            CliError::CheckFailed { .. } => "CheckFailed",
            CliError::Usage(_) => "UsageError",
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn to_json(&self) -> ErrorJson {
        let mut j = ErrorJson {
            error: self.kind().to_string(),
            message: self.to_string(),
            key: None,
            line: None,
            column: None,
            failed: Vec::new(),
        };
        match self {
            CliError::Parse { line, column, .. } => {
                j.line = Some(*line);
                j.column = Some(*column);
            }
            CliError::Schema { key, .. } => j.key = Some(key.clone()),
            CliError::CheckFailed { failed } => j.failed = failed.clone(),
            _ => {}
        }
        j
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
