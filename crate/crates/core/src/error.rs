use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = BterError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum BterError {
    /// Inputs that violate a documented precondition.
    #[error("invalid input: {0}")]
    Validation(String),

    /// The final affinity group cannot be closed with a single block.
    #[error("setup failed at degree {degree}: last group needs {blocks} blocks but only one may be shrunk")]
    LastGroup { degree: usize, blocks: u64 },

    /// A fitting target that no parameter in the search range reaches.
    #[error("infeasible fit: {0}")]
    Infeasible(String),

    #[error("{}:{line}: {msg}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl BterError {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        BterError::Validation(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        BterError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            BterError::Validation(_) | BterError::LastGroup { .. } | BterError::Parse { .. } => 2,
            BterError::Infeasible(_) => 3,
            BterError::Io { .. } => 4,
        }
    }
}
