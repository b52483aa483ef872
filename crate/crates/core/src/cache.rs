//! Append-only JSON-lines store of solved instances.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::lattice::VertexCoord;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub m: u32,
    pub n: u32,
    pub t: u32,
    pub r: u32,
    pub gamma: usize,
    pub witness: Vec<VertexCoord>,
    pub proved: bool,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug)]
pub struct ResultsCache {
    path: PathBuf,
}

impl ResultsCache {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        ResultsCache { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// All records; a missing file is an empty cache.
    pub fn records(&self) -> Result<Vec<CacheRecord>, Error> {
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(e.into()),
        };
        let mut out = Vec::new();
        for (lineno, line) in BufReader::new(file).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec = serde_json::from_str(&line).map_err(|e| {
                Error::Format(format!("{}:{}: {e}", self.path.display(), lineno + 1))
            })?;
            out.push(rec);
        }
        Ok(out)
    }

    /// The first proved record for the instance.
    pub fn lookup(&self, m: u32, n: u32, t: u32, r: u32) -> Result<Option<CacheRecord>, Error> {
        Ok(self
            .records()?
            .into_iter()
            .find(|x| x.proved && (x.m, x.n, x.t, x.r) == (m, n, t, r)))
    }

    pub fn append(&self, record: &CacheRecord) -> Result<(), Error> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        let line = serde_json::to_string(record)?;
        writeln!(file, "{line}")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(m: u32, gamma: usize, proved: bool) -> CacheRecord {
        CacheRecord {
            m,
            n: 2,
            t: 2,
            r: 1,
            gamma,
            witness: vec![VertexCoord::new(0, 0, 0)],
            proved,
            runtime_ms: 3,
        }
    }

    #[test]
    fn append_and_lookup() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultsCache::new(dir.path().join("c.jsonl"));
        assert!(cache.records().unwrap().is_empty());
        cache.append(&rec(1, 5, false)).unwrap();
        assert_eq!(cache.lookup(1, 2, 2, 1).unwrap(), None);
        cache.append(&rec(1, 5, true)).unwrap();
        cache.append(&rec(2, 8, true)).unwrap();
        assert_eq!(cache.records().unwrap().len(), 3);
        assert_eq!(cache.lookup(2, 2, 2, 1).unwrap().unwrap().gamma, 8);
        assert_eq!(cache.lookup(3, 2, 2, 1).unwrap(), None);
    }

    #[test]
    fn malformed_line_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        std::fs::write(&path, "{not json}\n").unwrap();
        assert!(matches!(
            ResultsCache::new(path).records(),
            Err(Error::Format(_))
        ));
    }
}
