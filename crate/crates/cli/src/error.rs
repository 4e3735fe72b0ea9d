use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("physics error in {context}: {source}")]
    Physics {
        context: String,
        source: qwr_core::Error,
    },
}

impl CliError {
    pub fn physics(context: impl Into<String>) -> impl FnOnce(qwr_core::Error) -> CliError {
        let context = context.into();
        move |source| CliError::Physics { context, source }
    }

    /// Machine-readable error record for stderr.
    pub fn json(&self) -> String {
        let kind = match self {
            CliError::Config(_) => "config",
            CliError::Io(_) => "io",
            CliError::Physics { .. } => "physics",
        };
        serde_json::json!({ "error": self.to_string(), "kind": kind }).to_string()
    }
}
