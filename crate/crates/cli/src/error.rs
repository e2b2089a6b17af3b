use std::fmt;

use serde_json::json;

/// Exit status: recognized / success.
pub const EXIT_OK: i32 = 0;
/// The curve is valid but not a recognized torus knot (or synthesis did
/// not verify).
pub const EXIT_NOT_RECOGNIZED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
/// The geometry is degenerate (tangency, collision, singular system, ...).
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Parse { field: String, message: String },
    Io { path: String, message: String },
    Core(polyknot::Error),
}

impl CliError {
    pub fn parse(field: &str, message: &str) -> CliError {
        CliError::Parse {
            field: field.to_string(),
            message: message.to_string(),
        }
    }

    pub fn io(path: &str, err: std::io::Error) -> CliError {
        CliError::Io {
            path: path.to_string(),
            message: err.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_degeneracy() => EXIT_DEGENERATE,
            CliError::Core(polyknot::Error::NotMonic(_) | polyknot::Error::Unliftable { .. }) => EXIT_DEGENERATE,
            _ => EXIT_INPUT,
        }
    }

    /// `{"format": 1, "error": {"kind": ..., "message": ..., ...}}`.
    pub fn to_json(&self, source: Option<&str>) -> serde_json::Value {
        let mut err = match self {
            CliError::Parse { field, message } => json!({"kind": "ParseError", "field": field, "message": message}),
            CliError::Io { path, message } => json!({"kind": "IoError", "path": path, "message": message}),
            CliError::Core(e) => json!({"kind": e.kind(), "message": e.to_string()}),
        };
        if let Some(s) = source {
            err["source"] = json!(s);
        }
        json!({"format": 1, "error": err})
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { field, message } => write!(f, "parse error in `{field}`: {message}"),
            CliError::Io { path, message } => write!(f, "{path}: {message}"),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl std::error::Error for CliError {}

impl From<polyknot::Error> for CliError {
    fn from(e: polyknot::Error) -> Self {
        CliError::Core(e)
    }
}
