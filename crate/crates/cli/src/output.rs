//! Report envelopes, file output and exit codes.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use locus_core::poincare::CheckStatus;
use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

/// One pass/fail line of a command.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub id: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Verdict {
    pub fn new(id: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        let status = if pass {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self {
            id: id.into(),
            status,
            detail: detail.into(),
        }
    }

    pub fn with_status(
        id: impl Into<String>,
        status: CheckStatus,
        detail: impl Into<String>,
    ) -> Self {
        Self {
            id: id.into(),
            status,
            detail: detail.into(),
        }
    }

    /// A module error, carried verbatim.
    pub fn error(id: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Self {
            id: id.into(),
            status: CheckStatus::Fail,
            detail: err.to_string(),
        }
    }
}

pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Self {
            name: name.into(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: impl IntoIterator<Item = f64>) {
        self.rows
            .push(row.into_iter().map(|v| format!("{v:e}")).collect());
    }
}

/// Result of one command before it is written out.
pub struct Outcome {
    pub command: String,
    pub config: Value,
    pub verdicts: Vec<Verdict>,
    pub result: Value,
    pub tables: Vec<Table>,
}

impl Outcome {
    pub fn status(&self) -> CheckStatus {
        self.verdicts
            .iter()
            .fold(CheckStatus::Pass, |s, v| s.worst(v.status))
    }

    pub fn body(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "status": self.status(),
            "checks": self.verdicts,
            "result": self.result,
        })
    }
}

pub fn exit_code(status: CheckStatus) -> i32 {
    match status {
        CheckStatus::Pass => 0,
        CheckStatus::Fail => 1,
        CheckStatus::Inconclusive => 2,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Both,
}

/// Writes `<command>.json` (header with timestamps kept apart from the body)
/// and any CSV tables; returns the written paths.
pub fn write(
    outcome: &Outcome,
    dir: &Path,
    format: Format,
    elapsed_ms: f64,
) -> std::io::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    if format != Format::Csv {
        let stamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let doc = json!({
            "header": { "timestamp_unix_s": stamp, "elapsed_ms": elapsed_ms },
            "body": outcome.body(),
        });
        let path = dir.join(format!("{}.json", outcome.command));
        std::fs::write(&path, serde_json::to_string_pretty(&doc)? + "\n")?;
        written.push(path);
    }
    if format != Format::Json {
        for t in &outcome.tables {
            let path = dir.join(format!("{}-{}.csv", outcome.command, t.name));
            let mut w = csv::Writer::from_path(&path)?;
            w.write_record(&t.header)?;
            for r in &t.rows {
                w.write_record(r)?;
            }
            w.flush()?;
            written.push(path);
        }
    }
    Ok(written)
}

pub fn print_summary(outcome: &Outcome) {
    for v in &outcome.verdicts {
        println!("{:<13} {:<32} {}", v.status.to_string(), v.id, v.detail);
    }
    println!("{}: {}", outcome.command, outcome.status());
}
