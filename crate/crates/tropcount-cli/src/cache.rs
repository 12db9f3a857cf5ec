//! One JSON file per enumeration key. Unreadable or stale entries are ignored.

use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use tropcount::enumerate::{EnumerationResult, PointConfiguration};
use tropcount::lattice::{LatticePolygon, PolygonJson};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CacheKey {
    pub polygon: PolygonJson,
    pub delta: i64,
    pub config: PointConfiguration,
}

impl CacheKey {
    pub fn new(polygon: &LatticePolygon, delta: i64, config: &PointConfiguration) -> Self {
        CacheKey { polygon: polygon.to_json(), delta, config: config.clone() }
    }

    pub fn digest(&self) -> String {
        let text = serde_json::to_string(self).expect("keys serialize");
        let mut h = Sha256::new();
        h.update(SCHEMA_VERSION.to_le_bytes());
        h.update(text.as_bytes());
        hex::encode(h.finalize())
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    schema_version: u32,
    key: CacheKey,
    result: EnumerationResult,
}

pub struct Cache {
    dir: PathBuf,
}

pub fn default_dir() -> Option<PathBuf> {
    if let Some(x) = std::env::var_os("XDG_CACHE_HOME") {
        return Some(PathBuf::from(x).join("tropcount"));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("tropcount"))
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    pub fn load(&self, key: &CacheKey) -> Option<EnumerationResult> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(_) => {
                log::info!("cache miss {}", path.display());
                return None;
            }
        };
        match serde_json::from_str::<Entry>(&text) {
            Ok(e) if e.schema_version == SCHEMA_VERSION && e.key == *key => {
                log::info!("cache hit {}", path.display());
                Some(e.result)
            }
            _ => {
                log::warn!("ignoring stale cache entry {}", path.display());
                None
            }
        }
    }

    pub fn store(&self, key: &CacheKey, result: &EnumerationResult) {
        let entry = Entry { schema_version: SCHEMA_VERSION, key: key.clone(), result: result.clone() };
        let path = self.path(key);
        let written = fs::create_dir_all(&self.dir).and_then(|_| {
            let tmp = path.with_extension("tmp");
            fs::write(&tmp, serde_json::to_vec(&entry).expect("entries serialize"))?;
            fs::rename(&tmp, &path)
        });
        match written {
            Ok(()) => log::info!("cached {}", path.display()),
            Err(e) => log::warn!("could not write cache entry {}: {e}", path.display()),
        }
    }
}
