use serde_json::json;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{0}")]
    Oracle(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Oracle(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Numeric(_) => "numeric",
            CliError::Oracle(_) => "oracle",
        }
    }

    /// Single-line JSON for standard error.
    pub fn to_json(&self) -> String {
        json!({
            "error": {
                "kind": self.kind(),
                "message": self.to_string(),
                "exit_code": self.exit_code(),
            }
        })
        .to_string()
    }
}

impl From<tpqhe_core::Error> for CliError {
    fn from(e: tpqhe_core::Error) -> Self {
        if e.is_config() {
            CliError::Config(e.to_string())
        } else {
            CliError::Numeric(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Config(format!("i/o: {e}"))
    }
}
