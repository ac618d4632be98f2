//! Local snapshot of best-known minimum distances, loaded from CSV with the
//! header `q,n,k,d`.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BklcTable {
    entries: BTreeMap<(u32, usize, usize), usize>,
}

#[derive(Deserialize)]
struct Row {
    q: u32,
    n: usize,
    k: usize,
    d: usize,
}

impl BklcTable {
    pub fn from_reader(reader: impl Read) -> Result<BklcTable> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let header_err = |msg: String| Error::Bklc { line: 1, msg };
        let headers = rdr.headers().map_err(|e| header_err(e.to_string()))?.clone();
        if !headers.is_empty() && headers.iter().collect::<Vec<_>>() != ["q", "n", "k", "d"] {
            return Err(header_err(format!("expected header q,n,k,d, found {}", headers.iter().collect::<Vec<_>>().join(","))));
        }
        let mut table = BklcTable::default();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Bklc {
                line: e.position().map_or(0, |p| p.line()),
                msg: e.to_string(),
            })?;
            let line = rec.position().map_or(0, |p| p.line());
            let row: Row = rec.deserialize(Some(&headers)).map_err(|e| Error::Bklc { line, msg: e.to_string() })?;
            table.insert(row.q, row.n, row.k, row.d).map_err(|msg| Error::Bklc { line, msg })?;
        }
        Ok(table)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<BklcTable> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::Bklc {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })?;
        BklcTable::from_reader(file)
    }

    fn insert(&mut self, q: u32, n: usize, k: usize, d: usize) -> std::result::Result<(), String> {
        if k > n || k == 0 {
            return Err(format!("dimension {k} out of range for length {n}"));
        }
        if d == 0 || d > n - k + 1 {
            return Err(format!("d = {d} violates the Singleton bound n - k + 1 = {}", n - k + 1));
        }
        if self.entries.insert((q, n, k), d).is_some() {
            return Err(format!("duplicate entry for q={q} n={n} k={k}"));
        }
        Ok(())
    }

    pub fn lookup(&self, q: u32, n: usize, k: usize) -> Result<usize> {
        self.entries.get(&(q, n, k)).copied().ok_or(Error::BklcMissing { q, n, k })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
