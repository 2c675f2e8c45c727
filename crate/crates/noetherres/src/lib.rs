//! File formats, reports and the command dispatcher behind the
//! `noetherres` binary.

pub mod commands;
pub mod input;
pub mod oracle;
pub mod parallel;
pub mod report;

pub use commands::{run, Command, InputSource, Job, DEFAULT_SEED};
pub use report::Report;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("I/O error: {0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] noetherres_core::Error),
}

impl CliError {
    /// 2 for failed algorithm preconditions, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_validation() => 2,
            _ => 1,
        }
    }

    /// Variant name of the underlying error.
    pub fn kind(&self) -> String {
        match self {
            CliError::Parse(_) => String::from("Parse"),
            CliError::Io(_) => String::from("Io"),
            CliError::Core(e) => {
                let dbg = format!("{e:?}");
                dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("").to_string()
            }
        }
    }
}
