//! On-disk cache of command outputs keyed and checksummed with SHA-256.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::CliError;

/// A stored command result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub output: String,
    pub passed: bool,
}

#[derive(Serialize, Deserialize)]
struct Stored {
    sha256: String,
    output: String,
    passed: bool,
}

fn digest(output: &str, passed: bool) -> String {
    let mut h = Sha256::new();
    h.update(output.as_bytes());
    h.update([u8::from(passed)]);
    format!("{:x}", h.finalize())
}

/// Directory of cached outputs.
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    /// Opens (and creates) the cache directory.
    pub fn open(dir: &Path) -> Result<Self, CliError> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    /// Path of the entry for a request key.
    pub fn path(&self, key: &str) -> PathBuf {
        let name = format!("{:x}", Sha256::digest(key.as_bytes()));
        self.dir.join(format!("{name}.json"))
    }

    /// The cached entry, if any; a checksum mismatch is an error.
    pub fn get(&self, key: &str) -> Result<Option<Entry>, CliError> {
        let path = self.path(key);
        let Ok(text) = fs::read_to_string(&path) else {
            return Ok(None);
        };
        let stored: Stored = serde_json::from_str(&text).map_err(|_| CliError::CacheCorrupt(path.clone()))?;
        if digest(&stored.output, stored.passed) != stored.sha256 {
            return Err(CliError::CacheCorrupt(path));
        }
        Ok(Some(Entry { output: stored.output, passed: stored.passed }))
    }

    /// Stores an entry.
    pub fn put(&self, key: &str, entry: &Entry) -> Result<(), CliError> {
        let stored = Stored { sha256: digest(&entry.output, entry.passed), output: entry.output.clone(), passed: entry.passed };
        let tmp = self.path(key).with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(&stored)?)?;
        fs::rename(tmp, self.path(key))?;
        Ok(())
    }
}
