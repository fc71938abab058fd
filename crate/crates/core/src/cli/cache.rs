//! Optional on-disk store of atomic expansions, keyed by `"a,b"`.

use std::collections::BTreeMap;
use std::fs;
use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use rand::seq::IteratorRandom;

use crate::combo::{BasisLabel, Combination, ExpansionJson};
use crate::lattice::Weight;
use crate::precanonical::atomic;

#[derive(Debug)]
pub struct AtomicCache {
    path: PathBuf,
    entries: BTreeMap<String, ExpansionJson>,
    dirty: bool,
}

fn key(w: Weight) -> String {
    format!("{},{}", w.a, w.b)
}

impl AtomicCache {
    /// Reads the cache at `path`, or starts an empty one if the file does not
    /// exist. One entry chosen at random is recomputed; a mismatch rejects the
    /// whole file.
    pub fn load(path: &Path) -> Result<Self, String> {
        let entries: BTreeMap<String, ExpansionJson> = match fs::read_to_string(path) {
            Ok(text) => serde_json::from_str(&text).map_err(|e| format!("cache {}: {e}", path.display()))?,
            Err(e) if e.kind() == ErrorKind::NotFound => BTreeMap::new(),
            Err(e) => return Err(format!("cache {}: {e}", path.display())),
        };
        for (k, doc) in &entries {
            if *k != key(doc.weight) || doc.basis != BasisLabel::Atomic.to_string() {
                return Err(format!("cache {}: malformed entry {k:?}", path.display()));
            }
        }
        if let Some(doc) = entries.values().choose(&mut rand::thread_rng()) {
            let stored = Combination::from_json_doc(doc).map_err(|e| format!("cache {}: {e}", path.display()))?;
            let fresh = atomic(doc.weight).map_err(|e| e.to_string())?;
            if stored != fresh {
                return Err(format!("cache {}: stale entry for {}", path.display(), doc.weight));
            }
        }
        Ok(AtomicCache { path: path.to_path_buf(), entries, dirty: false })
    }

    pub fn atomic(&mut self, lam: Weight) -> crate::Result<Combination> {
        let lam = lam.require_dominant()?;
        if let Some(doc) = self.entries.get(&key(lam)) {
            return Combination::from_json_doc(doc).map_err(crate::Error::Internal);
        }
        let fresh = atomic(lam)?;
        self.entries.insert(key(lam), fresh.to_json_doc(lam));
        self.dirty = true;
        Ok(fresh)
    }

    pub fn save(&self) -> Result<(), String> {
        if !self.dirty {
            return Ok(());
        }
        let text = serde_json::to_string(&self.entries).expect("cache serializes");
        fs::write(&self.path, text).map_err(|e| format!("cache {}: {e}", self.path.display()))
    }
}
