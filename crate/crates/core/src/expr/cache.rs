//! Content-addressed, write-once result cache.
//!
//! A record lives in `<dir>/<sha256(key)>.rec` and consists of a small
//! header followed by the canonical printed value:
//!
//! ```text
//! tautochow-cache 1
//! ring: bv
//! fingerprint: 3f2a...
//! key: {"command":"normalize",...}
//! ---
//! 24*o(1)*o(2)
//! ```

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

pub const CACHE_VERSION: u32 = 1;
const MAGIC: &str = "tautochow-cache";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub command: String,
    pub ring: String,
    pub n: Option<u32>,
    pub partition: Option<String>,
    pub l: Option<u32>,
    pub input: String,
    pub fingerprint: String,
}

impl CacheKey {
    pub fn new(command: &str, ring: &str, input: &str, fingerprint: &str) -> Self {
        CacheKey {
            command: command.into(),
            ring: ring.into(),
            n: None,
            partition: None,
            l: None,
            input: input.into(),
            fingerprint: fingerprint.into(),
        }
    }

    fn serialized(&self) -> String {
        serde_json::to_string(self).expect("cache key serializes")
    }

    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.serialized().as_bytes()))
    }
}

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache integrity violation: key {digest} already holds a different value")]
    Integrity { digest: String },
    #[error("cache i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

enum Lookup {
    Hit(String),
    Miss,
}

impl Cache {
    /// Opens (creating if needed) a cache rooted at `dir`.
    pub fn open(dir: impl AsRef<Path>) -> Result<Self, CacheError> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Cache {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.rec", key.digest()))
    }

    fn render(key: &CacheKey, value: &str) -> String {
        format!(
            "{MAGIC} {CACHE_VERSION}\nring: {}\nfingerprint: {}\nkey: {}\n---\n{}\n",
            key.ring,
            key.fingerprint,
            key.serialized(),
            value
        )
    }

    fn lookup(&self, key: &CacheKey) -> Lookup {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => {
                log::warn!("unreadable cache record {}: {e}", path.display());
                return Lookup::Miss;
            }
        };
        let mut lines = text.splitn(6, '\n');
        let header = lines.next().unwrap_or("");
        let Some(version) = header.strip_prefix(MAGIC).map(str::trim) else {
            log::warn!("corrupt cache record {}: bad header", path.display());
            return Lookup::Miss;
        };
        if version != CACHE_VERSION.to_string() {
            log::info!("cache record {} has version {version}, ignoring", path.display());
            return Lookup::Miss;
        }
        let ring = lines.next().and_then(|l| l.strip_prefix("ring: "));
        let fp = lines.next().and_then(|l| l.strip_prefix("fingerprint: "));
        let stored_key = lines.next().and_then(|l| l.strip_prefix("key: "));
        let sep = lines.next();
        let body = lines.next();
        match (ring, fp, stored_key, sep, body) {
            (Some(r), Some(f), Some(k), Some("---"), Some(b))
                if r == key.ring && f == key.fingerprint && b.ends_with('\n') =>
            {
                if k != key.serialized() {
                    log::warn!("cache record {} belongs to another key", path.display());
                    return Lookup::Miss;
                }
                Lookup::Hit(b.trim_end_matches('\n').to_string())
            }
            _ => {
                log::warn!("corrupt cache record {}", path.display());
                Lookup::Miss
            }
        }
    }

    /// Stored canonical value for `key`, if any. Corrupt or foreign-version
    /// records read as misses.
    pub fn get(&self, key: &CacheKey) -> Option<String> {
        match self.lookup(key) {
            Lookup::Hit(v) => Some(v),
            Lookup::Miss => None,
        }
    }

    /// Stores `value` under `key`. Rewriting the same value is a no-op; a
    /// different value for an existing key is an integrity violation.
    pub fn put(&self, key: &CacheKey, value: &str) -> Result<(), CacheError> {
        if let Lookup::Hit(existing) = self.lookup(key) {
            if existing == value {
                return Ok(());
            }
            return Err(CacheError::Integrity { digest: key.digest() });
        }
        let final_path = self.path(key);
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}-{}",
            key.digest(),
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(Self::render(key, value).as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, &final_path)?;
        Ok(())
    }
}
