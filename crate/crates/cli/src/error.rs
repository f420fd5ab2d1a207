use pullin::PullinError;
use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),

    #[error("invalid {flag}: {message}")]
    Invalid { flag: &'static str, message: String },

    /// A module precondition rejected the configuration before computation.
    #[error("{0}")]
    Precondition(PullinError),

    #[error("{0}")]
    Compute(PullinError),

    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),

    #[error("{failed} acceptance criterion(s) failed")]
    Verification { failed: usize },
}

impl From<PullinError> for CliError {
    fn from(e: PullinError) -> Self {
        CliError::Precondition(e)
    }
}

impl CliError {
    pub fn invalid(flag: &'static str, message: impl Into<String>) -> Self {
        CliError::Invalid {
            flag,
            message: message.into(),
        }
    }

    /// 2 for invalid input, 1 for anything that failed after validation.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(e) => e.exit_code().clamp(0, 255) as u8,
            CliError::Invalid { .. } | CliError::Precondition(_) => 2,
            CliError::Compute(_) | CliError::Io(_) | CliError::Verification { .. } => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) | CliError::Invalid { .. } | CliError::Precondition(_) => "invalid_input",
            CliError::Compute(_) => "computation",
            CliError::Io(_) => "io",
            CliError::Verification { .. } => "verification",
        }
    }

    fn parameter(&self) -> Option<&'static str> {
        match self {
            CliError::Invalid { flag, .. } => Some(flag),
            CliError::Precondition(e) | CliError::Compute(e) => match e {
                PullinError::InvalidParameter { name, .. } => Some(name),
                PullinError::Domain { what, .. } => Some(what),
                PullinError::BeyondPullIn { .. } => Some("lambda"),
                _ => None,
            },
            _ => None,
        }
    }

    /// One-line JSON diagnostic for standard error.
    pub fn to_json_line(&self) -> String {
        json!({
            "error": self.kind(),
            "parameter": self.parameter(),
            "message": self.to_string(),
        })
        .to_string()
    }
}
