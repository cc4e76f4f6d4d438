use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::CliError;
use crate::run::{Record, Settings};

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

pub fn sha256_hex(text: &str) -> String {
    hex(&Sha256::digest(text.as_bytes()))
}

/// Content-addressed store of finished records.
pub struct Cache {
    dir: PathBuf,
    settings_hash: String,
}

impl Cache {
    pub fn open(out: &Path, settings: &Settings) -> Result<Self, CliError> {
        let dir = out.join("cache");
        fs::create_dir_all(&dir).map_err(CliError::io(&dir))?;
        let settings_hash = sha256_hex(&serde_json::to_string(settings)?);
        Ok(Cache { dir, settings_hash })
    }

    pub fn key(&self, graph6: &str, mode: &str, seed: u64) -> String {
        sha256_hex(&format!("{graph6}\n{mode}\n{seed}\n{}", self.settings_hash))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn get(&self, key: &str) -> Option<Record> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, key: &str, record: &Record) -> Result<(), CliError> {
        let path = self.path(key);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string(record)?).map_err(CliError::io(&tmp))?;
        fs::rename(&tmp, &path).map_err(CliError::io(&path))
    }
}

pub struct Row<'a> {
    pub source: &'a str,
    pub record: &'a Record,
    pub cached: bool,
}

pub const CSV_HEADER: &str = "source,graph6,n,mode,paths,bound,bound_violation,audit,invariant_failure,wall_time,seed,cached";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Row<'_> {
    pub fn csv(&self) -> String {
        let r = self.record;
        let paths = r.cover.as_ref().map(|c| c.len().to_string()).unwrap_or_default();
        let bound = if r.n > 0 { cubic_cover::optimizer::path_bound(r.n).to_string() } else { String::new() };
        let audit = r
            .audit
            .as_ref()
            .and_then(|a| a["passed"].as_bool())
            .map(|p| if p { "pass" } else { "fail" })
            .unwrap_or("");
        [
            csv_field(self.source),
            csv_field(&r.graph6),
            r.n.to_string(),
            r.mode.clone(),
            paths,
            bound,
            r.bound_violation.to_string(),
            audit.to_string(),
            csv_field(r.invariant_failure.as_deref().unwrap_or("")),
            format!("{:.6}", r.wall_time),
            r.seed.to_string(),
            self.cached.to_string(),
        ]
        .join(",")
    }
}

/// Appends records to `results.jsonl`, rewrites `summary.csv`, and returns
/// the CSV text.
pub fn write_reports(out: &Path, rows: &[Row]) -> Result<String, CliError> {
    fs::create_dir_all(out).map_err(CliError::io(out))?;
    let jsonl = out.join("results.jsonl");
    let mut file = OpenOptions::new().create(true).append(true).open(&jsonl).map_err(CliError::io(&jsonl))?;
    let mut buf = String::new();
    for row in rows {
        buf.push_str(&serde_json::to_string(row.record)?);
        buf.push('\n');
    }
    file.write_all(buf.as_bytes()).map_err(CliError::io(&jsonl))?;

    let mut csv = String::from(CSV_HEADER);
    csv.push('\n');
    for row in rows {
        csv.push_str(&row.csv());
        csv.push('\n');
    }
    let summary = out.join("summary.csv");
    fs::write(&summary, &csv).map_err(CliError::io(&summary))?;
    Ok(csv)
}

pub fn write_graph6(out: &Path, records: &[&Record]) -> Result<PathBuf, CliError> {
    fs::create_dir_all(out).map_err(CliError::io(out))?;
    let path = out.join("graphs.g6");
    let text: String = records.iter().map(|r| format!("{}\n", r.graph6)).collect();
    fs::write(&path, text).map_err(CliError::io(&path))?;
    Ok(path)
}
