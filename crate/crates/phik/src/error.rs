use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    VerifyFailed = 1,
    Usage = 2,
    Resource = 3,
    Io = 4,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] phik_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write to stdout: {0}")]
    Stdout(std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("thread pool: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_status(&self) -> ExitStatus {
        use phik_core::Error as E;
        match self {
            CliError::Core(e) if e.is_resource() => ExitStatus::Resource,
            CliError::Core(E::Domain(_)) | CliError::Usage(_) => ExitStatus::Usage,
            CliError::Core(_) => ExitStatus::VerifyFailed,
            CliError::Threads(_) => ExitStatus::Resource,
            CliError::Write { .. } | CliError::Stdout(_) | CliError::Csv(_) | CliError::Json(_) => {
                ExitStatus::Io
            }
        }
    }
}
