//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text (edge lists, assembly, IR files, configs).
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Semantically invalid input (negative ids, bad dimensions, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// Out-of-range vertex or index access.
    #[error("out of range: {0}")]
    Range(String),

    /// A single source vertex cannot fit the per-shard buffer budget.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Model construction or validation failure.
    #[error("invalid model: {0}")]
    Model(String),

    /// Compilation failure (labeling, grouping, code generation).
    #[error("compile error: {0}")]
    Compile(String),

    /// Assembly syntax or semantic error.
    #[error("assembly error at line {line}: {msg}")]
    Asm { line: usize, msg: String },

    /// Macro/address resolution failure (buffer overflow, bad layout).
    #[error("resolve error: {0}")]
    Resolve(String),

    /// Inconsistent run configuration (mismatched sizing record, ...).
    #[error("configuration error: {0}")]
    Config(String),

    /// Simulator detected an internal fault (deadlock, sizing bug).
    #[error("simulation fault: {0}")]
    Sim(String),

    /// Report/plot-data assembly failure (missing baseline rows, ...).
    #[error("report error: {0}")]
    Report(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn asm(line: usize, msg: impl Into<String>) -> Self {
        Error::Asm { line, msg: msg.into() }
    }
}
