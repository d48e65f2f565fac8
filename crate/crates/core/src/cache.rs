//! Persistent cache of computed `E_eta` and `P_Lambda`, one JSON record per line.
//!
//! A record looks like `{"kind": "P", "key": "2,0;1", "N": 4, "value": {...}}`. Appends hold an
//! exclusive lock on the file and reads a shared one.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::macdonald::{cache_insert_e, cache_insert_p, cached_e, cached_p, PBasisElement};
use crate::sparts::SuperPartition;
use crate::xpoly::XPoly;

pub const ENV_VAR: &str = "BIMAC_CACHE";

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Key {
    E(Vec<u32>),
    P(SuperPartition),
}

fn eta_text(eta: &[u32]) -> String {
    eta.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn parse_eta(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(|p| p.trim().parse().map_err(|_| Error::Cache(format!("bad composition {s:?}"))))
        .collect()
}

/// A cache file plus the set of keys it already holds.
#[derive(Debug)]
pub struct DiskCache {
    path: PathBuf,
    known: HashSet<Key>,
}

impl DiskCache {
    /// Opens the file named by `BIMAC_CACHE`, if set.
    pub fn from_env() -> Result<Option<DiskCache>> {
        match std::env::var_os(ENV_VAR) {
            Some(p) if !p.is_empty() => DiskCache::open(p).map(Some),
            _ => Ok(None),
        }
    }

    /// Reads every record of `path` into the in-process caches. A missing file is an empty cache.
    pub fn open(path: impl AsRef<Path>) -> Result<DiskCache> {
        let path = path.as_ref().to_path_buf();
        let mut known = HashSet::new();
        let file = match File::open(&path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(DiskCache { path, known }),
            Err(e) => return Err(Error::Cache(format!("{}: {e}", path.display()))),
        };
        file.lock_shared().map_err(|e| Error::Cache(e.to_string()))?;
        for (no, line) in BufReader::new(&file).lines().enumerate() {
            let line = line.map_err(|e| Error::Cache(e.to_string()))?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: Value = serde_json::from_str(&line)
                .map_err(|e| Error::Cache(format!("{}:{}: {e}", path.display(), no + 1)))?;
            known.insert(load_record(&rec)?);
        }
        Ok(DiskCache { path, known })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.known.len()
    }

    pub fn is_empty(&self) -> bool {
        self.known.is_empty()
    }

    /// Appends every in-process entry that the file does not hold yet; returns how many were written.
    pub fn persist(&mut self) -> Result<usize> {
        let mut lines = Vec::new();
        let mut es = cached_e();
        es.sort_by(|a, b| (a.eta.len(), &a.eta).cmp(&(b.eta.len(), &b.eta)));
        for e in es {
            let key = Key::E(e.eta.clone());
            if !self.known.contains(&key) {
                lines.push(json!({
                    "kind": "E",
                    "key": eta_text(&e.eta),
                    "N": e.eta.len(),
                    "value": e.poly.to_json(),
                }));
                self.known.insert(key);
            }
        }
        let mut ps = cached_p();
        ps.sort_by(|a, b| a.lam.cmp(&b.lam));
        for p in ps {
            let key = Key::P(p.lam.clone());
            if !self.known.contains(&key) {
                lines.push(json!({
                    "kind": "P",
                    "key": p.lam.to_text(),
                    "N": p.lam.n(),
                    "value": p.to_json(),
                }));
                self.known.insert(key);
            }
        }
        if lines.is_empty() {
            return Ok(0);
        }
        let io = |e: std::io::Error| Error::Cache(format!("{}: {e}", self.path.display()));
        let mut file = OpenOptions::new().create(true).append(true).open(&self.path).map_err(io)?;
        file.lock().map_err(io)?;
        let mut buf = String::new();
        for l in &lines {
            buf.push_str(&l.to_string());
            buf.push('\n');
        }
        file.write_all(buf.as_bytes()).map_err(io)?;
        file.flush().map_err(io)?;
        file.unlock().map_err(io)?;
        Ok(lines.len())
    }
}

fn load_record(rec: &Value) -> Result<Key> {
    let kind = rec["kind"].as_str().unwrap_or_default();
    let key = rec["key"]
        .as_str()
        .ok_or_else(|| Error::Cache("record without key".into()))?;
    let n = rec["N"]
        .as_u64()
        .ok_or_else(|| Error::Cache("record without N".into()))? as usize;
    match kind {
        "E" => {
            let eta = parse_eta(key)?;
            let poly = XPoly::from_json(&rec["value"])?;
            if eta.len() != n || poly.nvars() != n {
                return Err(Error::Cache(format!("E record {key:?} has inconsistent N")));
            }
            cache_insert_e(&eta, poly);
            Ok(Key::E(eta))
        }
        "P" => {
            let p = PBasisElement::from_json(&rec["value"])?;
            if p.lam != SuperPartition::parse(key, n)? {
                return Err(Error::Cache(format!("P record {key:?} does not match its value")));
            }
            let lam = p.lam.clone();
            cache_insert_p(p);
            Ok(Key::P(lam))
        }
        other => Err(Error::Cache(format!("unknown record kind {other:?}"))),
    }
}
