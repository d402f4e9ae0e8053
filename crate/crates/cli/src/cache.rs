//! On-disk cache of computed tables.
//!
//! Entries live in one JSON file per key, named by the SHA-256 of the key.
//! A file whose key, engine version or checksum does not match is treated
//! as a miss and overwritten on the next store.

use std::io::Write;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "KHSYMP_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub kind: String,
    pub params: Vec<(String, u64)>,
    pub engine_version: String,
}

impl CacheKey {
    pub fn new(kind: &str, params: &[(&str, u64)]) -> Self {
        CacheKey {
            kind: kind.to_string(),
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            engine_version: khsymp::ENGINE_VERSION.to_string(),
        }
    }

    fn file_name(&self) -> String {
        let key = serde_json::to_string(self).expect("key serializes");
        format!("{}-{}.json", self.kind, &checksum(&key)[..16])
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CacheEntry {
    key: CacheKey,
    checksum: String,
    payload: String,
}

fn checksum(payload: &str) -> String {
    hex::encode(Sha256::digest(payload.as_bytes()))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `$KHSYMP_CACHE_DIR`, else `$XDG_CACHE_HOME/khsymp`, else
    /// `$HOME/.cache/khsymp`.
    pub fn from_env() -> Option<Self> {
        let var = |name| std::env::var_os(name).filter(|v| !v.is_empty()).map(PathBuf::from);
        var(CACHE_ENV)
            .or_else(|| var("XDG_CACHE_HOME").map(|d| d.join("khsymp")))
            .or_else(|| var("HOME").map(|d| d.join(".cache").join("khsymp")))
            .map(Cache::new)
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    pub fn load(&self, key: &CacheKey) -> Option<String> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key == *key && entry.checksum == checksum(&entry.payload)).then_some(entry.payload)
    }

    pub fn store(&self, key: &CacheKey, payload: &str) -> std::io::Result<()> {
        std::fs::create_dir_all(&self.dir)?;
        let entry = CacheEntry { key: key.clone(), checksum: checksum(payload), payload: payload.to_string() };
        let mut file = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer(&mut file, &entry)?;
        file.flush()?;
        file.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}
