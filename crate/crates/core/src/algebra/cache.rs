use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::field::CanonicalTerms;
use super::{parse_series, serialize_series, Field, PuiseuxSeries};
use crate::Result;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "NEKRASOV_CACHE_DIR";

/// Counters of a [`SeriesCache`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub memory_hits: u64,
    pub disk_hits: u64,
    pub misses: u64,
}

impl CacheStats {
    pub fn hits(&self) -> u64 {
        self.memory_hits + self.disk_hits
    }

    pub fn since(&self, earlier: &CacheStats) -> CacheStats {
        CacheStats {
            memory_hits: self.memory_hits - earlier.memory_hits,
            disk_hits: self.disk_hits - earlier.disk_hits,
            misses: self.misses - earlier.misses,
        }
    }
}

/// Content-addressed series files in the canonical text format.
#[derive(Clone, Debug)]
pub struct DiskCache {
    dir: PathBuf,
}

impl DiskCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(DiskCache { dir })
    }

    /// Uses `NEKRASOV_CACHE_DIR` when set, `default` otherwise.
    pub fn from_env_or(default: impl AsRef<Path>) -> Result<Self> {
        match std::env::var_os(CACHE_DIR_ENV) {
            Some(d) if !d.is_empty() => Self::new(PathBuf::from(d)),
            _ => Self::new(default.as_ref()),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn digest(key: &str) -> String {
        hex::encode(Sha256::digest(key.as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{}.series", Self::digest(key)))
    }

    /// `None` on a miss; `Some(Err)` for an unreadable or corrupt entry.
    pub fn get<C: Field + CanonicalTerms>(&self, key: &str) -> Option<Result<PuiseuxSeries<C>>> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let mut lines = text.splitn(2, '\n');
        let header = lines.next().unwrap_or("");
        if header != format!("# key {key}") {
            return Some(Err(crate::Error::Cache(format!("key mismatch in {}", self.path(key).display()))));
        }
        Some(parse_series(lines.next().unwrap_or("")))
    }

    /// Writes via a temporary file and rename, so readers never see a partial entry.
    pub fn put<C: Field + CanonicalTerms>(&self, key: &str, series: &PuiseuxSeries<C>) -> Result<()> {
        let body = serialize_series(series)?;
        let path = self.path(key);
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, format!("# key {key}\n{body}"))?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

/// Memo of computed series, shared across threads, optionally backed by disk.
pub struct SeriesCache<C> {
    memory: RwLock<HashMap<String, Arc<PuiseuxSeries<C>>>>,
    disk: Option<DiskCache>,
    memory_hits: AtomicU64,
    disk_hits: AtomicU64,
    misses: AtomicU64,
}

impl<C> Default for SeriesCache<C> {
    fn default() -> Self {
        SeriesCache {
            memory: RwLock::new(HashMap::new()),
            disk: None,
            memory_hits: AtomicU64::new(0),
            disk_hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }
}

impl<C: Field + CanonicalTerms> SeriesCache<C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_disk(disk: DiskCache) -> Self {
        SeriesCache { disk: Some(disk), ..Self::default() }
    }

    pub fn disk(&self) -> Option<&DiskCache> {
        self.disk.as_ref()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            memory_hits: self.memory_hits.load(Ordering::Relaxed),
            disk_hits: self.disk_hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    pub fn len(&self) -> usize {
        self.memory.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get_or_compute(&self, key: &str, compute: impl FnOnce() -> Result<PuiseuxSeries<C>>) -> Result<Arc<PuiseuxSeries<C>>> {
        if let Some(s) = self.memory.read().unwrap().get(key) {
            self.memory_hits.fetch_add(1, Ordering::Relaxed);
            return Ok(s.clone());
        }
        if let Some(disk) = &self.disk {
            match disk.get::<C>(key) {
                Some(Ok(s)) => {
                    self.disk_hits.fetch_add(1, Ordering::Relaxed);
                    return Ok(self.insert(key, s));
                }
                Some(Err(e)) => log::warn!("ignoring corrupt cache entry for {key}: {e}"),
                None => {}
            }
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let s = compute()?;
        if let Some(disk) = &self.disk {
            // symbolic coefficients with denominators have no canonical text form
            if let Err(e) = disk.put(key, &s) {
                log::debug!("not caching {key} on disk: {e}");
            }
        }
        Ok(self.insert(key, s))
    }

    fn insert(&self, key: &str, s: PuiseuxSeries<C>) -> Arc<PuiseuxSeries<C>> {
        self.memory.write().unwrap().entry(key.to_string()).or_insert_with(|| Arc::new(s)).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Grid, Rational};

    #[test]
    fn disk_round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let disk = DiskCache::new(dir.path()).unwrap();
        let s: PuiseuxSeries<Rational> = PuiseuxSeries::from_coeffs(Grid::default(), 32, [(0, int(1)), (4, crate::algebra::ratio(-3, 7))]);
        disk.put("k", &s).unwrap();
        assert_eq!(disk.get::<Rational>("k").unwrap().unwrap(), s);
        assert!(disk.get::<Rational>("other").is_none());

        fs::write(disk.path("k"), "# key k\ngarbage").unwrap();
        assert!(disk.get::<Rational>("k").unwrap().is_err());

        let cache = SeriesCache::with_disk(disk);
        let got = cache.get_or_compute("k", || Ok(s.clone())).unwrap();
        assert_eq!(*got, s);
        assert_eq!(cache.stats().misses, 1);
        cache.get_or_compute("k", || unreachable!()).unwrap();
        assert_eq!(cache.stats().memory_hits, 1);
    }
}
