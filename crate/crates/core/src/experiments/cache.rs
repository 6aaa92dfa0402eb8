//! Restartable sweeps: a flat JSON-lines file of finished records keyed by
//! `(m, a, method, cutoff factor, library version)`.
//!
//! The file only grows. Each flush copies the current contents plus the new
//! lines to a temporary file in the same directory and renames it over the
//! original, so readers never observe a torn write. One writer at a time.

use super::record::SweepRecord;
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "MODHULL_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".modhull-cache";
const FILE_NAME: &str = "sweep-cache.jsonl";

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CacheKey {
    pub m: u64,
    pub a: u64,
    pub method: String,
    /// `f64::to_string` of the cutoff factor, so keys compare exactly.
    pub cutoff_factor: String,
    pub version: String,
}

impl CacheKey {
    pub fn new(m: u64, a: u64, method: &str, cutoff_factor: f64) -> Self {
        Self {
            m,
            a,
            method: method.to_string(),
            cutoff_factor: cutoff_factor.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: CacheKey,
    record: SweepRecord,
}

#[derive(Debug)]
pub struct SweepCache {
    path: PathBuf,
    entries: HashMap<CacheKey, SweepRecord>,
    pending: Vec<(CacheKey, SweepRecord)>,
}

impl SweepCache {
    /// Directory from [`CACHE_DIR_ENV`], else [`DEFAULT_CACHE_DIR`] under
    /// the working directory.
    pub fn default_dir() -> PathBuf {
        std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
    }

    /// Opens (or starts) the cache in `dir`. Unparseable lines, such as a
    /// record written by an incompatible build, are skipped.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        let path = dir.as_ref().join(FILE_NAME);
        let mut entries = HashMap::new();
        if path.exists() {
            for line in fs::read_to_string(&path)?.lines() {
                if let Ok(e) = serde_json::from_str::<Entry>(line) {
                    entries.insert(e.key, e.record);
                }
            }
        }
        Ok(Self { path, entries, pending: Vec::new() })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &CacheKey) -> Option<&SweepRecord> {
        self.entries.get(key)
    }

    pub fn insert(&mut self, key: CacheKey, record: SweepRecord) {
        if !self.entries.contains_key(&key) {
            self.entries.insert(key.clone(), record.clone());
            self.pending.push((key, record));
        }
    }

    /// Persists pending entries.
    pub fn flush(&mut self) -> Result<()> {
        if self.pending.is_empty() {
            return Ok(());
        }
        let dir = self.path.parent().unwrap_or(Path::new("."));
        fs::create_dir_all(dir)?;
        let mut contents = if self.path.exists() { fs::read(&self.path)? } else { Vec::new() };
        if !contents.is_empty() && !contents.ends_with(b"\n") {
            contents.push(b'\n');
        }
        for (key, record) in self.pending.drain(..) {
            let line = serde_json::to_string(&Entry { key, record }).expect("records serialize");
            contents.extend_from_slice(line.as_bytes());
            contents.push(b'\n');
        }
        let tmp = dir.join(format!(".{FILE_NAME}.{}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(&contents)?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}
