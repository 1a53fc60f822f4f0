use bogoliubov_core::Error as CoreError;

/// Process exit codes, one per error class.
pub mod exit {
    pub const OK: i32 = 0;
    pub const OTHER: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const PARSE: i32 = 3;
    pub const STRUCTURE: i32 = 4;
    pub const OVERFLOW: i32 = 5;
    pub const BAD_RANGE: i32 = 6;
    pub const WRONG_REGIME: i32 = 7;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {path}: {message}")]
    Parse { path: String, message: String },

    #[error("bad range '{spec}': {reason}")]
    BadRange { spec: String, reason: &'static str },

    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => exit::OTHER,
            CliError::Parse { .. } => exit::PARSE,
            CliError::BadRange { .. } => exit::BAD_RANGE,
            CliError::Usage(_) => exit::USAGE,
            CliError::Core(e) => match e {
                CoreError::StructureViolation { .. }
                | CoreError::NonFinite(_)
                | CoreError::DimensionMismatch(_)
                | CoreError::EmptyForm => exit::STRUCTURE,
                CoreError::Overflow { .. } => exit::OVERFLOW,
                CoreError::WrongRegime(_) => exit::WRONG_REGIME,
                CoreError::InvalidParameters(_) => exit::USAGE,
                _ => exit::OTHER,
            },
        }
    }
}
