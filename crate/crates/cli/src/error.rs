use thiserror::Error;

/// Problems with the input that stop a run before any verdict; all exit with status 2.
#[derive(Debug, Error)]
pub enum InputError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("unknown {kind} preset `{preset}` at line {line}, column {column}")]
    UnknownPreset {
        kind: &'static str,
        preset: String,
        line: usize,
        column: usize,
    },
    #[error("cannot resolve {kind} `{name}` at line {line}, column {column}")]
    NameResolution {
        kind: &'static str,
        name: String,
        line: usize,
        column: usize,
    },
    #[error("unknown demo `{name}`; run `twistlab list-demos` for the catalog")]
    UnknownDemo { name: String },
    #[error("{0}")]
    Core(#[from] twistlab_core::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("invalid TWISTLAB_MAX_DIM `{0}`: expected a positive integer")]
    InvalidCap(String),
}
