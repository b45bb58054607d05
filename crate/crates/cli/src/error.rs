use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] gpf_core::Error),
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        Self::Io {
            context: context.into(),
            source,
        }
    }

    /// Process exit code: 3 for bad input or unwritable output, 1 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Io { .. } => 3,
            Self::Core(e) => match e {
                gpf_core::Error::Config(_)
                | gpf_core::Error::Descriptor { .. }
                | gpf_core::Error::InvalidFunction(_)
                | gpf_core::Error::Domain { .. } => 3,
                _ => 1,
            },
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Self::io("writing CSV", io),
            other => Self::Config(format!("CSV output: {other:?}")),
        }
    }
}
