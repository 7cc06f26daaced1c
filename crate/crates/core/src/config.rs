//! Flat `key = value` configuration files.
//!
//! One assignment per line; `#` starts a comment anywhere on a line; blank
//! lines are ignored. Keys and values are trimmed. Values keep their raw
//! string form; callers parse them into the types they need.

use crate::CoreError;
use std::collections::BTreeMap;

/// Parses config text into an ordered key/value map.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CoreError> {
    let mut map = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let content = content.trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| CoreError::Config {
            line,
            message: format!("expected `key = value`, got {content:?}"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty() {
            return Err(CoreError::Config {
                line,
                message: "empty key".to_string(),
            });
        }
        map.insert(key.to_string(), value.to_string());
    }
    Ok(map)
}

/// Reads and parses a config file.
pub fn read_config(path: &std::path::Path) -> Result<BTreeMap<String, String>, CoreError> {
    parse_config(&std::fs::read_to_string(path)?)
}
