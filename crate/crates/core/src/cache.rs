//! File cache of decompositions keyed by schema version, module and power.
//!
//! Each entry is a JSON file plus a sidecar holding its SHA-256. Entries
//! whose hash, content or dimension identity fail to check are recomputed.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::engine::DecompositionResult;
use crate::error::Result;
use crate::io::{decomposition_from_json, decomposition_to_json};
use crate::lattice::Fundamental;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// An entry existed but failed validation.
    Replaced,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Cache {
    pub fn open(dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        Ok(Cache {
            dir: dir.as_ref().to_path_buf(),
        })
    }

    pub fn entry_path(&self, module: Fundamental, p: u32) -> PathBuf {
        self.dir.join(format!(
            "decompose-v{SCHEMA_VERSION}-{}-p{p}.json",
            module.name()
        ))
    }

    fn hash_path(&self, module: Fundamental, p: u32) -> PathBuf {
        let mut path = self.entry_path(module, p).into_os_string();
        path.push(".sha256");
        PathBuf::from(path)
    }

    /// `None` for a missing or invalid entry.
    fn try_load(&self, module: Fundamental, p: u32) -> Option<DecompositionResult> {
        let text = fs::read(self.entry_path(module, p)).ok()?;
        let stored = fs::read_to_string(self.hash_path(module, p)).ok()?;
        if stored.trim() != digest(&text) {
            return None;
        }
        let d = decomposition_from_json(std::str::from_utf8(&text).ok()?).ok()?;
        let consistent =
            d.module() == module && d.power() == p && d.dimension_sum() == d.expected_dimension();
        consistent.then_some(d)
    }

    pub fn load(&self, module: Fundamental, p: u32) -> Option<DecompositionResult> {
        self.try_load(module, p)
    }

    pub fn store(&self, d: &DecompositionResult) -> Result<()> {
        let text = decomposition_to_json(d)?;
        fs::write(self.entry_path(d.module(), d.power()), &text)?;
        fs::write(
            self.hash_path(d.module(), d.power()),
            format!("{}\n", digest(text.as_bytes())),
        )?;
        Ok(())
    }

    pub fn get_or_compute(
        &self,
        module: Fundamental,
        p: u32,
        compute: impl FnOnce() -> Result<DecompositionResult>,
    ) -> Result<(DecompositionResult, CacheOutcome)> {
        if let Some(d) = self.try_load(module, p) {
            return Ok((d, CacheOutcome::Hit));
        }
        let existed = self.entry_path(module, p).exists();
        let d = compute()?;
        self.store(&d)?;
        let outcome = if existed {
            CacheOutcome::Replaced
        } else {
            CacheOutcome::Miss
        };
        Ok((d, outcome))
    }
}
