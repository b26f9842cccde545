//! Output formatting and destination handling.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::ValueEnum;

/// Wire format of command output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-readable report.
    Text,
    /// Single JSON document with a stable schema.
    Json,
    /// Comma-separated rows with a fixed header.
    Csv,
}

/// Writes `content` to the configured destination (file or stdout).
pub fn emit(path: &Option<PathBuf>, content: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, content),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(content.as_bytes())
        }
    }
}

/// Formats an `Option<f64>` for CSV cells (empty when absent).
pub fn csv_opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}
