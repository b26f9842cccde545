//! Optional JSON configuration file: a flat key-value object whose keys
//! mirror the long flag names. Explicit command-line flags win over the
//! file; the file wins over built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;

use serde_json::Value;

/// Parsed configuration file contents.
#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: BTreeMap<String, Value>,
}

impl ConfigFile {
    /// Loads and validates the file (must be a flat JSON object).
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config file {}: {e}", path.display()))?;
        let parsed: Value = serde_json::from_str(&text)
            .map_err(|e| format!("config file {} is not valid JSON: {e}", path.display()))?;
        let obj = parsed
            .as_object()
            .ok_or_else(|| format!("config file {} must hold a JSON object", path.display()))?;
        let mut values = BTreeMap::new();
        for (k, v) in obj {
            if v.is_object() || v.is_array() {
                return Err(format!(
                    "config key {k:?} must be a scalar (flat key-value file)"
                ));
            }
            values.insert(k.clone(), v.clone());
        }
        Ok(ConfigFile { values })
    }

    /// Number value for `key`, if present and numeric.
    pub fn number(&self, key: &str) -> Result<Option<f64>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_f64()
                .map(Some)
                .ok_or_else(|| format!("config key {key:?} must be a number")),
        }
    }

    /// Integer value for `key`, if present.
    pub fn integer(&self, key: &str) -> Result<Option<u64>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_u64()
                .map(Some)
                .ok_or_else(|| format!("config key {key:?} must be a non-negative integer")),
        }
    }

    /// Boolean value for `key`, if present.
    pub fn boolean(&self, key: &str) -> Result<Option<bool>, String> {
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .as_bool()
                .map(Some)
                .ok_or_else(|| format!("config key {key:?} must be a boolean")),
        }
    }
}
