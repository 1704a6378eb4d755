use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error(transparent)]
    Core(#[from] circlag::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 for anything the caller got wrong, 1 for failures during the
    /// computation itself.
    pub fn exit_code(&self) -> i32 {
        use circlag::Error as E;
        match self {
            CliError::Usage(_) | CliError::Config { .. } | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                E::InvalidParameter { .. }
                | E::UnknownSurface(_)
                | E::ChartDomain(_)
                | E::ExcludedPoint { .. }
                | E::EmptyDomain
                | E::Unsupported(_) => 2,
                _ => 1,
            },
        }
    }
}
