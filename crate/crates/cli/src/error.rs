use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{origin}:{line}:{column}: {message}")]
    Parse {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{origin}: {message}")]
    Invalid { origin: String, message: String },
    #[error("{origin}: {source}")]
    Core {
        origin: String,
        #[source]
        source: tcbound::Error,
    },
    #[error("unknown example {name:?}; available: {}", available.join(", "))]
    UnknownExample {
        name: String,
        available: Vec<String>,
    },
    #[error("{0}")]
    Usage(String),
    #[error("inconsistent bounds: {0}")]
    Inconsistent(String),
}

impl CliError {
    pub fn invalid(origin: &str, message: String) -> Self {
        CliError::Invalid {
            origin: origin.to_string(),
            message,
        }
    }

    pub fn core(origin: &str, source: tcbound::Error) -> Self {
        CliError::Core {
            origin: origin.to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        use tcbound::Error as E;
        match self {
            CliError::Inconsistent(_) => EXIT_INCONSISTENT,
            CliError::Core {
                source: E::GroupTooLarge { .. } | E::SaturationCap(_) | E::RegularizationFailed(_),
                ..
            } => EXIT_CAP,
            _ => EXIT_INVALID,
        }
    }
}
