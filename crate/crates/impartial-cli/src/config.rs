//! `key=value` experiment config files. Keys mirror the long flag names;
//! explicit command-line flags take precedence over file entries.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("config line {line}: expected key=value, got {text:?}")]
    MalformedLine { line: usize, text: String },
    #[error("config line {line}: empty key")]
    EmptyKey { line: usize },
}

/// Parses config text. Blank lines and `#` comments are ignored; a repeated
/// key keeps its last assignment.
pub fn parse_config_str(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::MalformedLine {
                line: idx + 1,
                text: line.to_string(),
            });
        };
        let key = key.trim();
        if key.is_empty() {
            return Err(ConfigError::EmptyKey { line: idx + 1 });
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}
