//! Run configuration: command-line flags over a `key = value` file over
//! built-in defaults.

use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("config line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("invalid value for `{key}`: {value}")]
    Value { key: String, value: String },
    #[error("missing required setting `{0}`")]
    Missing(&'static str),
}

/// Keys accepted in config files, with dashes or underscores.
pub const KEYS: &[&str] = &[
    "poly",
    "x0",
    "offset",
    "digits",
    "target_radius",
    "max_steps",
    "digit_budget",
    "output",
    "no_timing",
    "steps",
    "print_limit",
    "mode",
    "from",
    "to",
    "max_bits",
    "alg_degree",
    "alg_height",
    "bfile",
    "window",
];

/// Parsed `key = value` file. Blank lines and `#` comments are ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax { line: i + 1 })?;
            let key = k.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(ConfigError::UnknownKey { line: i + 1, key });
            }
            let v = v.trim().trim_matches('"').to_string();
            values.insert(key, v);
        }
        Ok(ConfigFile { values })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Typed lookup; `Ok(None)` when absent.
    pub fn get<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError> {
        match self.raw(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|_| ConfigError::Value {
                key: key.to_string(),
                value: v.to_string(),
            }),
        }
    }
}

/// `flag`, else the config file's value, else `default`.
pub fn pick<T: std::str::FromStr>(
    flag: Option<T>,
    file: &ConfigFile,
    key: &str,
    default: T,
) -> Result<T, ConfigError> {
    Ok(match flag {
        Some(v) => v,
        None => file.get(key)?.unwrap_or(default),
    })
}

/// Like [`pick`] with no default.
pub fn pick_opt<T: std::str::FromStr>(
    flag: Option<T>,
    file: &ConfigFile,
    key: &str,
) -> Result<Option<T>, ConfigError> {
    Ok(match flag {
        Some(v) => Some(v),
        None => file.get(key)?,
    })
}
