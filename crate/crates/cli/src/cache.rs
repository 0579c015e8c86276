//! Content-addressed on-disk store of computed series.
//!
//! A key is the operation name plus canonical parameters and order; the file
//! name is its SHA-256 and the file body is the series JSON.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use qpchar::TruncatedSeries;
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Self> {
        fs::create_dir_all(dir)?;
        Ok(Self {
            dir: dir.to_path_buf(),
        })
    }

    fn path(&self, key: &str) -> PathBuf {
        let digest = Sha256::digest(key.as_bytes());
        self.dir.join(format!("{}.json", hex::encode(digest)))
    }

    /// `None` when absent. An unreadable or malformed entry is reported on
    /// stderr and treated as absent.
    pub fn load(&self, key: &str, order: usize) -> Option<TruncatedSeries> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<TruncatedSeries>(&text) {
            Ok(s) if s.order() == order => Some(s),
            Ok(s) => {
                eprintln!(
                    "warning: cache entry {} has order {}, expected {order}; ignoring",
                    path.display(),
                    s.order()
                );
                None
            }
            Err(e) => {
                eprintln!(
                    "warning: corrupt cache entry {}: {e}; ignoring",
                    path.display()
                );
                None
            }
        }
    }

    pub fn store(&self, key: &str, series: &TruncatedSeries) -> io::Result<()> {
        let path = self.path(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_string(series)?)?;
        fs::rename(&tmp, &path)
    }

    pub fn remove(&self, key: &str) {
        let _ = fs::remove_file(self.path(key));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let s = qpchar::qseries::fock_character(12);
        assert!(cache.load("k", 12).is_none());
        cache.store("k", &s).unwrap();
        assert_eq!(cache.load("k", 12), Some(s.clone()));
        assert!(cache.load("k", 11).is_none());
        assert!(cache.load("other", 12).is_none());
        fs::write(cache.path("k"), "{\"order\":12").unwrap();
        assert!(cache.load("k", 12).is_none());
        cache.remove("k");
        assert!(!cache.path("k").exists());
    }

    #[test]
    fn keys_map_to_distinct_files() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        assert_ne!(
            cache.path("char/verma/product/60"),
            cache.path("char/verma/product/61")
        );
        assert!(cache
            .path("x")
            .file_name()
            .unwrap()
            .to_str()
            .unwrap()
            .ends_with(".json"));
    }
}
