//! Flat `key = value` text format shared by section specs, transforms and
//! run configuration files.
//!
//! One pair per line. Blank lines and lines starting with `#` are ignored.
//! Keys are unique; values are kept verbatim (trimmed) and converted by the
//! consumer.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};

/// An ordered list of key-value pairs with the line each came from.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct KeyValues {
    source: PathBuf,
    entries: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    key: String,
    value: String,
    line: u64,
}

impl KeyValues {
    pub fn new() -> Self {
        Self::default()
    }

    /// Parses text; `source` only labels error messages.
    pub fn parse(text: &str, source: impl Into<PathBuf>) -> Result<Self> {
        let source = source.into();
        let mut entries: Vec<Entry> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx as u64 + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let Some((key, value)) = trimmed.split_once('=') else {
                return Err(Error::parse(&source, line, "expected `key = value`"));
            };
            let key = key.trim();
            if key.is_empty() {
                return Err(Error::parse(&source, line, "empty key"));
            }
            if entries.iter().any(|e| e.key == key) {
                return Err(Error::parse(
                    &source,
                    line,
                    format!("duplicate key `{key}`"),
                ));
            }
            entries.push(Entry {
                key: key.to_string(),
                value: value.trim().to_string(),
                line,
            });
        }
        Ok(Self { source, entries })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path)
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl ToString) {
        let line = self.entries.len() as u64 + 1;
        self.entries.push(Entry {
            key: key.into(),
            value: value.to_string(),
            line,
        });
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|e| e.key == key)
            .map(|e| e.value.as_str())
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.key.as_str())
    }

    /// Fails on the first key not in `allowed`.
    pub fn reject_unknown(&self, allowed: &[&str]) -> Result<()> {
        match self
            .entries
            .iter()
            .find(|e| !allowed.contains(&e.key.as_str()))
        {
            Some(e) => Err(Error::parse(
                &self.source,
                e.line,
                format!("unknown key `{}`", e.key),
            )),
            None => Ok(()),
        }
    }

    pub fn f64(&self, key: &str) -> Result<Option<f64>> {
        self.typed(key, |v| v.parse::<f64>().ok().filter(|x| x.is_finite()))
    }

    pub fn require_f64(&self, key: &str) -> Result<f64> {
        self.f64(key)?.ok_or_else(|| self.missing(key))
    }

    pub fn usize(&self, key: &str) -> Result<Option<usize>> {
        self.typed(key, |v| v.parse::<usize>().ok())
    }

    pub fn require_usize(&self, key: &str) -> Result<usize> {
        self.usize(key)?.ok_or_else(|| self.missing(key))
    }

    fn typed<T>(&self, key: &str, conv: impl Fn(&str) -> Option<T>) -> Result<Option<T>> {
        let Some(entry) = self.entries.iter().find(|e| e.key == key) else {
            return Ok(None);
        };
        conv(&entry.value).map(Some).ok_or_else(|| {
            Error::parse(
                &self.source,
                entry.line,
                format!("invalid value `{}` for `{key}`", entry.value),
            )
        })
    }

    fn missing(&self, key: &str) -> Error {
        Error::parse(&self.source, 0, format!("missing key `{key}`"))
    }
}

impl std::fmt::Display for KeyValues {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut out = String::new();
        for e in &self.entries {
            let _ = writeln!(out, "{} = {}", e.key, e.value);
        }
        f.write_str(&out)
    }
}
