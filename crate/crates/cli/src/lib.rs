//! Command implementations behind the `yuzvinski` binary.
//!
//! Every command returns a JSON document. Exact integers (counts, valuations, `s`,
//! polynomial coefficients) are emitted as decimal strings, floats at full precision.

pub mod commands;
pub mod input;
pub mod verify;

use std::fmt;

use serde_json::Value;

pub use commands::{run_classify, run_entropy, run_mahler, run_polygon, run_trajectory, Options};
pub use input::{InputSpec, Subject};
pub use verify::{run_verify, Suite};

#[derive(Debug)]
pub enum CliError {
    /// Malformed or unsupported input; exit code 2.
    Input(String),
    /// Roots could not be certified; exit code 3, with whatever was computed.
    Certification { message: String, partial: Value },
    /// A verification suite or report invariant failed; exit code 4.
    Verification { message: String, report: Value },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Certification { .. } => 3,
            CliError::Verification { .. } => 4,
        }
    }

    /// Document to print alongside the error, if any.
    pub fn document(&self) -> Option<&Value> {
        match self {
            CliError::Input(_) => None,
            CliError::Certification { partial, .. } => Some(partial),
            CliError::Verification { report, .. } => Some(report),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Certification { message, .. } => write!(f, "certification failed: {message}"),
            CliError::Verification { message, .. } => write!(f, "verification failed: {message}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<yuzvinski::Error> for CliError {
    fn from(e: yuzvinski::Error) -> Self {
        use yuzvinski::Error as E;
        match e {
            E::EntropyCertification { reason, partial } => CliError::Certification {
                message: reason,
                partial: commands::entropy_document(&partial),
            },
            E::RootCertification { bits, partial } => CliError::Certification {
                message: format!("root disks not separated at {bits} bits"),
                partial: commands::roots_document(&partial),
            },
            E::InvariantViolation(m) => CliError::Verification {
                message: m,
                report: Value::Null,
            },
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
