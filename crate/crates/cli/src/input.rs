//! File loading: `.scheme` relation tables and `.eigen` first
//! eigenmatrices. Eigenmatrix-only inputs flow through every P/Q-level
//! operation but skip table-level ones.

use std::fmt;
use std::path::Path;

use amorph_core::scheme::{spectrum, validate_table, RelationTable, SchemeCore, SpectralData};
use amorph_core::text::{parse_eigenmatrix, parse_scheme};

/// CLI-level error with the process exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Malformed invocation or unreadable/unparseable input (exit 2).
    Input(String),
    /// A property failed: invalid scheme, no fusion, audit violations
    /// (exit 1).
    Violation(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Violation(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) | CliError::Violation(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

/// A loaded input: always has spectral data, has a table and core only for
/// `.scheme` files.
pub struct LoadedScheme {
    pub table: Option<RelationTable>,
    pub core: Option<SchemeCore>,
    pub spectral: SpectralData,
}

impl LoadedScheme {
    pub fn from_table(table: RelationTable) -> Result<LoadedScheme, CliError> {
        let core = validate_table(&table)
            .map_err(|e| CliError::Violation(format!("not an association scheme: {e}")))?;
        let spectral =
            spectrum(&core).map_err(|e| CliError::Violation(format!("spectrum rejected: {e}")))?;
        Ok(LoadedScheme {
            table: Some(table),
            core: Some(core),
            spectral,
        })
    }

    pub fn from_eigen_text(text: &str) -> Result<LoadedScheme, CliError> {
        let m = parse_eigenmatrix(text).map_err(|e| CliError::Input(e.to_string()))?;
        let spectral = SpectralData::from_eigenmatrix(m)
            .map_err(|e| CliError::Violation(format!("bad eigenmatrix: {e}")))?;
        Ok(LoadedScheme {
            table: None,
            core: None,
            spectral,
        })
    }

    pub fn from_scheme_text(text: &str) -> Result<LoadedScheme, CliError> {
        let table = parse_scheme(text).map_err(|e| match e {
            amorph_core::text::TextError::Scheme(inner) => {
                CliError::Violation(format!("not an association scheme: {inner}"))
            }
            other => CliError::Input(other.to_string()),
        })?;
        LoadedScheme::from_table(table)
    }
}

/// Loads a path by extension: `.scheme` or `.eigen`.
pub fn load_path(path: &Path) -> Result<LoadedScheme, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    match path.extension().and_then(|e| e.to_str()) {
        Some("eigen") => LoadedScheme::from_eigen_text(&text),
        _ => LoadedScheme::from_scheme_text(&text),
    }
}
