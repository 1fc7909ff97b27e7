use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::algos::BenchmarkResult;
use crate::error::{Error, Result};

/// File name of the archive inside a run's output directory.
pub const ARCHIVE_FILE: &str = "archive.jsonl";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub config_hash: String,
    pub tool_version: String,
    /// Seconds since the epoch from `SOURCE_DATE_EPOCH`, when set.
    pub timestamp: Option<u64>,
}

impl Provenance {
    pub fn new(config_hash: String) -> Provenance {
        let timestamp = std::env::var("SOURCE_DATE_EPOCH").ok().and_then(|s| s.trim().parse().ok());
        Provenance { config_hash, tool_version: env!("CARGO_PKG_VERSION").to_string(), timestamp }
    }
}

#[derive(Serialize, Deserialize)]
struct Header {
    provenance: Provenance,
}

/// JSON-lines archive: a provenance header line, then one result per line.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultsArchive {
    pub provenance: Provenance,
    pub rows: Vec<BenchmarkResult>,
}

impl ResultsArchive {
    pub fn to_jsonl(&self) -> String {
        let mut out = serde_json::to_string(&Header { provenance: self.provenance.clone() }).expect("header serializes");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&serde_json::to_string(row).expect("row serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<ResultsArchive> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, first) = lines.next().ok_or_else(|| Error::Parse { line: 1, msg: "empty archive".into() })?;
        let header: Header =
            serde_json::from_str(first).map_err(|e| Error::Parse { line: 1, msg: format!("bad header: {e}") })?;
        let rows = lines
            .map(|(i, l)| serde_json::from_str(l).map_err(|e| Error::Parse { line: i + 1, msg: e.to_string() }))
            .collect::<Result<_>>()?;
        Ok(ResultsArchive { provenance: header.provenance, rows })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, self.to_jsonl())?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<ResultsArchive> {
        ResultsArchive::from_jsonl(&fs::read_to_string(path)?)
    }
}
