//! Line-delimited JSON result cache.

use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;
pub const ENV_VAR: &str = "CYCLOKAPPA_CACHE";

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CacheRecord {
    pub schema_version: u32,
    pub command: String,
    pub parameters: Value,
    pub result: Value,
    pub software_version: String,
    pub timestamp: String,
}

impl CacheRecord {
    pub fn new(command: &str, parameters: Value, result: Value) -> Self {
        CacheRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            parameters,
            result,
            software_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
        }
    }

    fn matches(&self, command: &str, parameters: &Value) -> bool {
        self.schema_version == SCHEMA_VERSION
            && self.command == command
            && &self.parameters == parameters
            && self.software_version == env!("CARGO_PKG_VERSION")
    }
}

pub struct Cache {
    path: PathBuf,
    records: Vec<CacheRecord>,
}

/// `--cache` wins over the environment variable; neither means no cache.
pub fn resolve_path(flag: Option<&Path>) -> Option<PathBuf> {
    flag.map(Path::to_path_buf)
        .or_else(|| std::env::var_os(ENV_VAR).filter(|v| !v.is_empty()).map(PathBuf::from))
}

impl Cache {
    pub fn open(path: &Path) -> Result<Self> {
        let mut records = Vec::new();
        if path.exists() {
            let f = fs::File::open(path).with_context(|| format!("opening cache {}", path.display()))?;
            for (i, line) in BufReader::new(f).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<CacheRecord>(&line) {
                    Ok(r) => records.push(r),
                    Err(e) => eprintln!("warning: skipping cache line {}: {e}", i + 1),
                }
            }
        }
        Ok(Cache { path: path.to_path_buf(), records })
    }

    pub fn records(&self) -> &[CacheRecord] {
        &self.records
    }

    pub fn lookup(&self, command: &str, parameters: &Value) -> Option<&CacheRecord> {
        self.records.iter().rev().find(|r| r.matches(command, parameters))
    }

    pub fn append(&mut self, rec: CacheRecord) -> Result<()> {
        if let Some(dir) = self.path.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir)?;
        }
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .with_context(|| format!("writing cache {}", self.path.display()))?;
        writeln!(f, "{}", serde_json::to_string(&rec)?)?;
        self.records.push(rec);
        Ok(())
    }

    pub fn clear(&mut self) -> Result<()> {
        if self.path.exists() {
            fs::remove_file(&self.path)?;
        }
        self.records.clear();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let mut c = Cache::open(&path).unwrap();
        c.append(CacheRecord::new("kappa", json!({"N": 6}), json!({"kappa": 0}))).unwrap();
        let c = Cache::open(&path).unwrap();
        assert_eq!(c.lookup("kappa", &json!({"N": 6})).unwrap().result, json!({"kappa": 0}));
        assert!(c.lookup("kappa", &json!({"N": 7})).is_none());
    }
}
