//! Report rows and the CSV/JSON writers.
//!
//! CSV columns are fixed and versioned; every numeric cell carries its
//! finite/infinite tag in the adjacent column, and pass/fail is data, never
//! an exit status. The trailing `timestamp_utc` column is excluded from the
//! determinism surface; everything else is a pure function of config + seed.

use anyhow::{Context, Result};
use serde::Serialize;
use std::path::Path;
use wconv_core::ExtReal;

pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_COLUMNS: [&str; 11] = [
    "schema_version",
    "task",
    "row_id",
    "case",
    "value",
    "value_tag",
    "pass",
    "witness",
    "err_bound",
    "inputs",
    "timestamp_utc",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
    None,
}

impl Outcome {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Outcome::Pass => "pass",
            Outcome::Fail => "fail",
            Outcome::Inconclusive => "inconclusive",
            Outcome::None => "",
        }
    }
}

/// One result row; `detail` goes to the JSON report only.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub row_id: usize,
    pub case: String,
    pub value: Option<ExtReal>,
    pub outcome: Outcome,
    pub witness: String,
    pub err_bound: Option<f64>,
    pub inputs: serde_json::Value,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub detail: serde_json::Value,
    pub wall_ms: f64,
}

impl ReportRow {
    pub fn new(row_id: usize, case: impl Into<String>) -> Self {
        ReportRow {
            row_id,
            case: case.into(),
            value: None,
            outcome: Outcome::None,
            witness: String::new(),
            err_bound: None,
            inputs: serde_json::Value::Null,
            detail: serde_json::Value::Null,
            wall_ms: 0.0,
        }
    }

    pub fn value(mut self, v: ExtReal) -> Self {
        self.value = Some(v);
        self
    }

    pub fn outcome(mut self, o: Outcome) -> Self {
        self.outcome = o;
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = w.into();
        self
    }

    pub fn err_bound(mut self, e: f64) -> Self {
        self.err_bound = Some(e);
        self
    }

    pub fn inputs(mut self, v: serde_json::Value) -> Self {
        self.inputs = v;
        self
    }

    pub fn detail(mut self, v: serde_json::Value) -> Self {
        self.detail = v;
        self
    }
}

fn fmt_float(v: f64) -> String {
    // shortest round-trip representation keeps the CSV byte-deterministic
    format!("{v}")
}

pub fn write_csv(path: &Path, task: &str, rows: &[ReportRow], timestamp_ms: u128) -> Result<()> {
    let mut w = csv::Writer::from_path(path)
        .with_context(|| format!("cannot create CSV report {}", path.display()))?;
    w.write_record(CSV_COLUMNS)?;
    for row in rows {
        let (value, tag) = match row.value {
            Some(ExtReal::Finite(v)) => (fmt_float(v), "finite"),
            Some(ExtReal::Infinite) => (String::new(), "infinite"),
            None => (String::new(), ""),
        };
        w.write_record([
            SCHEMA_VERSION.to_string().as_str(),
            task,
            &row.row_id.to_string(),
            &row.case,
            &value,
            tag,
            row.outcome.as_str(),
            &row.witness,
            &row.err_bound.map(fmt_float).unwrap_or_default(),
            &serde_json::to_string(&row.inputs)?,
            &timestamp_ms.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json(
    path: &Path,
    task: &str,
    config_echo: &serde_json::Value,
    rows: &[ReportRow],
    wall_ms: f64,
    timestamp_ms: u128,
) -> Result<()> {
    let doc = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "task": task,
        "config": config_echo,
        "rows": rows,
        "wall_ms": wall_ms,
        "timestamp_utc_ms": timestamp_ms,
    });
    std::fs::write(path, serde_json::to_string_pretty(&doc)?)
        .with_context(|| format!("cannot write JSON report {}", path.display()))?;
    Ok(())
}
