//! Content-addressed table store under `SKL_CACHE_DIR`.

use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

pub const ENV: &str = "SKL_CACHE_DIR";

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn from_env() -> Self {
        Cache {
            dir: std::env::var_os(ENV).filter(|d| !d.is_empty()).map(PathBuf::from),
        }
    }

    /// Hex sha256 of the canonical JSON of `key`.
    pub fn address<K: Serialize>(key: &K) -> String {
        let bytes = serde_json::to_vec(key).expect("key serializes");
        Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect()
    }

    fn path<K: Serialize>(&self, key: &K) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}.json", Self::address(key))))
    }

    /// Unreadable or stale entries count as misses.
    pub fn get<K: Serialize, V: DeserializeOwned>(&self, key: &K) -> Option<V> {
        let text = std::fs::read_to_string(self.path(key)?).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put<K: Serialize, V: Serialize>(&self, key: &K, value: &V) -> std::io::Result<()> {
        let Some(path) = self.path(key) else { return Ok(()) };
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, serde_json::to_vec(value).expect("value serializes"))?;
        std::fs::rename(tmp, path)
    }
}
