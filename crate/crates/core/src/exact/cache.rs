//! Solved instances on disk, one JSON record per line.

use std::fs::{self, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{SearchResult, SearchStatus, SOLVER_VERSION};
use crate::graph::graph6;

/// Directory holding `ex_c4.jsonl`.
pub const CACHE_DIR_ENV: &str = "C4EX_CACHE_DIR";
const FILE_NAME: &str = "ex_c4.jsonl";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub n: usize,
    pub value: u64,
    pub witness_g6: String,
    pub status: String,
    pub solver_version: String,
}

impl CacheRecord {
    pub fn from_result(r: &SearchResult) -> Self {
        CacheRecord {
            n: r.n,
            value: r.value,
            witness_g6: graph6::encode(&r.witness),
            status: match r.status {
                SearchStatus::Exact => "exact".into(),
                SearchStatus::InterruptedWithBounds { .. } => "interrupted".into(),
            },
            solver_version: SOLVER_VERSION.into(),
        }
    }

    /// An exact record from this solver version whose witness decodes, is C4-free and
    /// has `value` edges on `n` vertices.
    fn trustworthy(&self) -> bool {
        self.status == "exact"
            && self.solver_version == SOLVER_VERSION
            && graph6::decode(&self.witness_g6)
                .map(|g| g.order() == self.n && g.edge_count() as u64 == self.value && g.is_c4_free())
                .unwrap_or(false)
    }
}

#[derive(Debug, Clone)]
pub struct Cache {
    path: PathBuf,
}

impl Cache {
    pub fn in_dir(dir: impl AsRef<Path>) -> Self {
        Cache { path: dir.as_ref().join(FILE_NAME) }
    }

    /// The cache named by `C4EX_CACHE_DIR`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV).map(Cache::in_dir)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// The last trustworthy exact record for `n`. Malformed lines are skipped.
    pub fn lookup(&self, n: usize) -> io::Result<Option<CacheRecord>> {
        let file = match fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut found = None;
        for line in BufReader::new(file).lines() {
            let line = line?;
            if let Ok(rec) = serde_json::from_str::<CacheRecord>(&line) {
                if rec.n == n && rec.trustworthy() {
                    found = Some(rec);
                }
            }
        }
        Ok(found)
    }

    pub fn store(&self, r: &SearchResult) -> io::Result<()> {
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut f = OpenOptions::new().create(true).append(true).open(&self.path)?;
        let line = serde_json::to_string(&CacheRecord::from_result(r)).map_err(io::Error::other)?;
        writeln!(f, "{line}")
    }
}
