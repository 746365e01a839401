//! Content-addressed JSON artifact store.
//!
//! Expensive artifacts (zero sets, scan tables) are cached on disk under a
//! key derived from the exact inputs that determine them. Writes are
//! idempotent: the artifact for a key is written once via a temp file and an
//! atomic rename, and a second write of the same key is a no-op, so existing
//! artifacts are never mutated in place.

use std::path::{Path, PathBuf};

use serde::{de::DeserializeOwned, Serialize};
use sha2::{Digest, Sha256};

use crate::error::Result;

/// On-disk cache rooted at a directory; keys are hashed into filenames.
#[derive(Debug, Clone)]
pub struct Cache {
    root: PathBuf,
}

/// Hashes a human-readable key (caller composes it from all relevant inputs)
/// into the hex filename stem used on disk.
pub fn key_hash(key: &str) -> String {
    let digest = Sha256::digest(key.as_bytes());
    hex::encode(digest)
}

impl Cache {
    /// Opens (creating if necessary) a cache rooted at `root`.
    pub fn open(root: impl AsRef<Path>) -> Result<Self> {
        let root = root.as_ref().to_path_buf();
        std::fs::create_dir_all(&root)?;
        Ok(Cache { root })
    }

    /// Directory backing this cache.
    pub fn root(&self) -> &Path {
        &self.root
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.root.join(format!("{}.json", key_hash(key)))
    }

    /// Whether an artifact exists for `key`.
    pub fn contains(&self, key: &str) -> bool {
        self.path_for(key).is_file()
    }

    /// Loads the artifact under `key`, or `None` if absent.
    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Result<Option<T>> {
        let path = self.path_for(key);
        if !path.is_file() {
            return Ok(None);
        }
        let bytes = std::fs::read(&path)?;
        Ok(Some(serde_json::from_slice(&bytes)?))
    }

    /// Stores `value` under `key` (no-op if the key already has an artifact).
    ///
    /// The write goes to a sibling temp file first and is renamed into place,
    /// so concurrent writers of the same key race benignly.
    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> Result<()> {
        let path = self.path_for(key);
        if path.is_file() {
            return Ok(());
        }
        let bytes = serde_json::to_vec(value)?;
        let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
        std::fs::write(&tmp, &bytes)?;
        std::fs::rename(&tmp, &path)?;
        Ok(())
    }

    /// Fetches the artifact for `key`, computing and storing it on a miss.
    pub fn get_or_insert_with<T, F>(&self, key: &str, compute: F) -> Result<T>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        if let Some(hit) = self.get(key)? {
            return Ok(hit);
        }
        let value = compute()?;
        self.put(key, &value)?;
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_idempotent_put() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = "zeros/q=4/idx=1/tmax=60";
        assert!(!cache.contains(key));
        cache.put(key, &vec![1.5f64, 2.5]).unwrap();
        assert!(cache.contains(key));
        // A second put with different content must NOT overwrite.
        cache.put(key, &vec![9.0f64]).unwrap();
        let back: Vec<f64> = cache.get(key).unwrap().unwrap();
        assert_eq!(back, vec![1.5, 2.5]);
    }

    #[test]
    fn get_or_insert_computes_once() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let mut calls = 0;
        let v: u64 = cache
            .get_or_insert_with("answer", || {
                calls += 1;
                Ok(42)
            })
            .unwrap();
        assert_eq!(v, 42);
        let v2: u64 = cache
            .get_or_insert_with("answer", || {
                calls += 1;
                Ok(7)
            })
            .unwrap();
        assert_eq!(v2, 42);
        assert_eq!(calls, 1);
    }

    #[test]
    fn distinct_keys_do_not_collide() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        cache.put("a", &1u8).unwrap();
        cache.put("b", &2u8).unwrap();
        assert_eq!(cache.get::<u8>("a").unwrap(), Some(1));
        assert_eq!(cache.get::<u8>("b").unwrap(), Some(2));
        assert_eq!(cache.get::<u8>("c").unwrap(), None);
    }

    #[test]
    fn key_hash_is_stable() {
        // Pinned so cached artifacts survive upgrades of this crate.
        assert_eq!(
            key_hash("zeros/q=4/idx=1/tmax=60"),
            "725658bf0ec59376a5cd523ce2a3471e531108a3df0d339bb3cfb2d1fab7cb12"
        );
    }
}
