use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] tailormap::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("config {path}, line {line}: {message}")]
    ConfigSyntax { path: PathBuf, line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Invalid(String),

    #[error(transparent)]
    Usage(#[from] clap::Error),
}

impl CliError {
    pub const PARSE: i32 = 2;
    pub const NON_CONVERGENCE: i32 = 3;
    pub const INVALID_CONFIG: i32 = 4;
    pub const IO: i32 = 5;

    pub fn exit_code(&self) -> i32 {
        use tailormap::Error as E;
        match self {
            CliError::Core(E::Parse(_)) | CliError::ConfigSyntax { .. } => Self::PARSE,
            CliError::Core(E::NonConvergence { .. }) => Self::NON_CONVERGENCE,
            CliError::Core(E::Io(_)) | CliError::Io { .. } => Self::IO,
            CliError::Core(_) | CliError::Invalid(_) | CliError::Usage(_) => Self::INVALID_CONFIG,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn read(path: &std::path::Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write(path: &std::path::Path, contents: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
