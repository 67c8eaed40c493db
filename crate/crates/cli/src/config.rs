//! Flat `key = value` configuration files.
//!
//! Keys are long flag names without the leading dashes (`chi-ratio = 0.6`).
//! Blank lines and everything after `#` are ignored. Flags given on the
//! command line override values from the file.

use std::fmt;

/// Flags that take no value; the file spells them `normalize = true`.
const SWITCHES: &[&str] = &["normalize"];

/// A malformed configuration line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    /// 1-based line number.
    pub line: usize,
    /// What is wrong.
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ConfigError {}

/// Parses the file into `(key, value)` pairs in file order.
pub fn parse(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let err = |message: String| ConfigError {
            line: i + 1,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
        let key = key.trim();
        let value = value.trim();
        if key.is_empty()
            || !key
                .chars()
                .all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '-')
        {
            return Err(err(format!("invalid key `{key}`")));
        }
        if key == "config" {
            return Err(err("`config` cannot be set from a configuration file".into()));
        }
        if value.is_empty() {
            return Err(err(format!("missing value for `{key}`")));
        }
        entries.push((key.to_owned(), value.to_owned()));
    }
    Ok(entries)
}

/// Turns parsed entries into command-line arguments.
pub fn to_args(entries: &[(String, String)]) -> Result<Vec<String>, ConfigError> {
    let mut args = Vec::new();
    for (key, value) in entries {
        if SWITCHES.contains(&key.as_str()) {
            match value.as_str() {
                "true" => args.push(format!("--{key}")),
                "false" => {}
                other => {
                    return Err(ConfigError {
                        line: 0,
                        message: format!("`{key}` expects true or false, got `{other}`"),
                    })
                }
            }
        } else {
            args.push(format!("--{key}={value}"));
        }
    }
    Ok(args)
}
