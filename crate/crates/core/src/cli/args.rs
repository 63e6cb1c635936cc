//! `--key value` / `--key=value` flags merged over an optional `key=value`
//! config file. Flags win over the file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Keys accepted by every subcommand.
pub const GLOBAL_KEYS: [&str; 2] = ["config", "threads"];

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Args {
    values: BTreeMap<String, String>,
}

/// Parses one config file body. Blank lines and `#` comments are skipped;
/// a repeated key keeps its last value.
pub fn parse_config(text: &str, path: &Path) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Format {
                path: path.to_path_buf(),
                message: format!("line {}: expected key=value", lineno + 1),
            });
        };
        let k = k.trim();
        if k.is_empty() {
            return Err(Error::Format {
                path: path.to_path_buf(),
                message: format!("line {}: empty key", lineno + 1),
            });
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

impl Args {
    /// Parses flags, loads `--config` if present and checks every key against `allowed`.
    pub fn parse(flags: &[String], allowed: &[&str]) -> Result<Args> {
        let mut from_flags = BTreeMap::new();
        let mut it = flags.iter();
        while let Some(arg) = it.next() {
            let Some(body) = arg.strip_prefix("--") else {
                return Err(Error::usage(arg.as_str(), "unexpected positional argument"));
            };
            let (key, value) = match body.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => {
                    let v = it
                        .next()
                        .ok_or_else(|| Error::usage(body, "missing value"))?;
                    (body.to_string(), v.clone())
                }
            };
            if key.is_empty() {
                return Err(Error::usage("--", "empty flag name"));
            }
            from_flags.insert(key, value);
        }
        let mut values = BTreeMap::new();
        if let Some(path) = from_flags.get("config") {
            let path = PathBuf::from(path);
            let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            values = parse_config(&text, &path)?;
            if values.contains_key("config") {
                return Err(Error::usage("config", "config files cannot include other config files"));
            }
        }
        values.extend(from_flags);
        for key in values.keys() {
            if !allowed.contains(&key.as_str()) && !GLOBAL_KEYS.contains(&key.as_str()) {
                return Err(Error::usage(key.as_str(), "unknown key for this subcommand"));
            }
        }
        Ok(Args { values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.raw(key).ok_or_else(|| Error::usage(key, "required"))
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.raw(key).map(|v| parse_scalar(key, v)).transpose()
    }

    pub fn get_or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    pub fn list_f64(&self, key: &str) -> Result<Option<Vec<f64>>> {
        self.raw(key)
            .map(|v| split(v).map(|item| parse_scalar(key, item)).collect())
            .transpose()
    }

    /// Integer lists also accept half-open ranges `a..b`.
    pub fn list_int<T>(&self, key: &str) -> Result<Option<Vec<T>>>
    where
        T: FromStr + TryFrom<u64>,
    {
        let Some(v) = self.raw(key) else {
            return Ok(None);
        };
        let mut out = Vec::new();
        for item in split(v) {
            match item.split_once("..") {
                Some((a, b)) => {
                    let a: u64 = parse_scalar(key, a)?;
                    let b: u64 = parse_scalar(key, b)?;
                    if a >= b {
                        return Err(Error::usage(key, format!("empty range {item:?}")));
                    }
                    for x in a..b {
                        out.push(T::try_from(x).map_err(|_| Error::usage(key, "value out of range"))?);
                    }
                }
                None => out.push(parse_scalar(key, item)?),
            }
        }
        Ok(Some(out))
    }
}

fn split(v: &str) -> impl Iterator<Item = &str> {
    v.split(',').map(str::trim)
}

fn parse_scalar<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.trim()
        .parse()
        .map_err(|_| Error::usage(key, format!("cannot parse {v:?}")))
}
