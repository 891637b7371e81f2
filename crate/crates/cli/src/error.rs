use std::process::ExitCode;

use thiserror::Error;

use projbill::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("viewport is degenerate: {0}")]
    ViewportDegenerate(String),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 3 for numerical failures (no convergence, unstable rank); 2 for
    /// usage, configuration and geometric degeneracies of the input.
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(self.code())
    }

    pub fn code(&self) -> u8 {
        match self {
            CliError::Config(_) | CliError::Usage(_) | CliError::ViewportDegenerate(_) | CliError::Io(_) => 2,
            CliError::Core(e) => match e {
                CoreError::NoConvergence { .. }
                | CoreError::RankUnstable { .. }
                | CoreError::RankDrop { .. }
                | CoreError::ChartDegenerate => 3,
                _ => 2,
            },
        }
    }
}
