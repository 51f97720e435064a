use std::fmt;
use std::path::Path;

use qclass_core::Error as CoreError;

/// Failure classes, each with its own exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Malformed input, bad flags or configuration.
    Schema,
    /// Input parses but is not a valid physical object.
    Physics,
    /// Kernel moduli outside their domain.
    Moduli,
    Io,
}

impl Kind {
    pub fn exit_code(self) -> i32 {
        match self {
            Kind::Schema => 2,
            Kind::Physics => 3,
            Kind::Moduli => 4,
            Kind::Io => 5,
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub kind: Kind,
    pub message: String,
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn schema(message: impl Into<String>) -> Self {
        Self {
            kind: Kind::Schema,
            message: message.into(),
        }
    }

    pub fn io(path: &Path, err: std::io::Error) -> Self {
        Self {
            kind: Kind::Io,
            message: format!("{}: {err}", path.display()),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let kind = match e {
            CoreError::NonFinite { .. }
            | CoreError::NotHermitian { .. }
            | CoreError::InvalidDensity(_)
            | CoreError::InvalidSimplex(_) => Kind::Physics,
            CoreError::OutsideQuatritModuli { .. } | CoreError::OutsidePairModuli(_) => {
                Kind::Moduli
            }
            CoreError::OutOfRange(_) | CoreError::KindMismatch(_) | CoreError::UnknownFigure(_) => {
                Kind::Schema
            }
        };
        Self {
            kind,
            message: e.to_string(),
        }
    }
}
