//! JSON-lines cache of exact search results, one file per pattern.
//!
//! Files are named by the hex of the pattern's canonical graph6 label and
//! hold one record per `m`. Records written by another generator version
//! are ignored on read and dropped on the next write.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::search::{SearchResult, GENERATOR_VERSION};

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("cache i/o on {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("cache record encoding: {0}")]
    Encode(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub h: String,
    pub m: usize,
    pub rho: u64,
    pub extremal: Vec<String>,
    pub truncated: bool,
    pub classes: u64,
    pub version: String,
}

impl From<&SearchResult> for CacheRecord {
    fn from(r: &SearchResult) -> Self {
        CacheRecord {
            h: r.pattern.clone(),
            m: r.m,
            rho: r.rho,
            extremal: r.extremal.clone(),
            truncated: r.truncated,
            classes: r.classes_scanned,
            version: GENERATOR_VERSION.to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ResultCache {
    dir: PathBuf,
}

fn hex(s: &str) -> String {
    s.bytes().map(|b| format!("{b:02x}")).collect()
}

impl ResultCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ResultCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Cache file for a canonical graph6 label.
    pub fn file_for(&self, canonical_label: &str) -> PathBuf {
        self.dir.join(format!("{}.jsonl", hex(canonical_label)))
    }

    fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CacheError + '_ {
        move |source| CacheError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Current-version records for a pattern; unreadable lines are skipped.
    fn records(&self, canonical_label: &str) -> Result<Vec<CacheRecord>, CacheError> {
        let path = self.file_for(canonical_label);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(Self::io_err(&path)(e)),
        };
        Ok(text
            .lines()
            .filter_map(|line| serde_json::from_str::<CacheRecord>(line).ok())
            .filter(|r| r.version == GENERATOR_VERSION && r.h == canonical_label)
            .collect())
    }

    /// A stored result usable with certificate cap `max_certificates`.
    pub fn get(
        &self,
        canonical_label: &str,
        m: usize,
        max_certificates: usize,
    ) -> Result<Option<SearchResult>, CacheError> {
        let Some(r) = self.records(canonical_label)?.into_iter().find(|r| r.m == m) else {
            return Ok(None);
        };
        // A truncated record only serves caps it fully covers.
        if r.truncated && r.extremal.len() < max_certificates {
            return Ok(None);
        }
        let truncated = r.truncated || r.extremal.len() > max_certificates;
        let mut extremal = r.extremal;
        extremal.truncate(max_certificates);
        Ok(Some(SearchResult {
            pattern: r.h,
            m: r.m,
            rho: r.rho,
            extremal,
            truncated,
            classes_scanned: r.classes,
        }))
    }

    /// Store a result, replacing any record for the same `m` and dropping
    /// stale versions. The file is rewritten through a temporary file.
    pub fn put(&self, result: &SearchResult) -> Result<(), CacheError> {
        fs::create_dir_all(&self.dir).map_err(Self::io_err(&self.dir))?;
        let mut records = self.records(&result.pattern)?;
        records.retain(|r| r.m != result.m);
        records.push(CacheRecord::from(result));
        records.sort_by_key(|r| r.m);
        let mut text = String::new();
        for r in &records {
            text += &serde_json::to_string(r)?;
            text.push('\n');
        }
        let path = self.file_for(&result.pattern);
        let tmp = path.with_extension(format!("jsonl.tmp{}", std::process::id()));
        fs::write(&tmp, text).map_err(Self::io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(Self::io_err(&path))?;
        Ok(())
    }
}
