//! Built-in examples, stored as JSON input files under `data/`.

use thiserror::Error;

use crate::format::{parse_input, FormatError, InputFile};

/// Names accepted by [`load`].
pub const NAMES: [&str; 4] = ["A3", "K2", "K3", "D5tilde"];

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?} (known: A3, K2, K3, D5tilde)")]
    Unknown(String),
    #[error("catalog entry {name:?} is invalid: {source}")]
    Invalid { name: String, source: FormatError },
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub input: InputFile,
}

/// The JSON text of an entry.
pub fn source(name: &str) -> Option<&'static str> {
    match name {
        "A3" => Some(include_str!("../data/A3.json")),
        "K2" => Some(include_str!("../data/K2.json")),
        "K3" => Some(include_str!("../data/K3.json")),
        "D5tilde" => Some(include_str!("../data/D5tilde.json")),
        _ => None,
    }
}

/// Parses and validates an entry, including its tube data.
pub fn load(name: &str) -> Result<CatalogEntry, CatalogError> {
    let text = source(name).ok_or_else(|| CatalogError::Unknown(name.to_string()))?;
    let input = parse_input(text).map_err(|source| CatalogError::Invalid {
        name: name.to_string(),
        source,
    })?;
    Ok(CatalogEntry {
        name: name.to_string(),
        input,
    })
}
