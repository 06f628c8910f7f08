use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at {field}: {message}")]
    Config { field: String, message: String },
    #[error("{method} failed: {source}")]
    Solver {
        method: &'static str,
        #[source]
        source: deltabound::Error,
    },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit code: 1 for configuration problems, 2 for solver and
    /// I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config { .. } => 1,
            CliError::Solver { .. } | CliError::Io(_) => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::config("g", "bad").exit_code(), 1);
        let solver = CliError::Solver {
            method: "greens",
            source: deltabound::Error::NoConvergence { iterations: 200 },
        };
        assert_eq!(solver.exit_code(), 2);
        assert!(solver.to_string().starts_with("greens failed"));
    }
}
