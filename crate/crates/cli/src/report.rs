//! Report records and their JSON Lines / CSV sinks.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::checks::{Check, Verdict};

/// One line of output: the sampled module, its Frobenius polynomials and the
/// verdict of every enabled check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub q: u64,
    pub n: usize,
    pub r: usize,
    pub seed: u64,
    pub sample: usize,
    /// φ_T coefficients g₀;…;g_r.
    pub g: String,
    /// The characteristic 𝔭 and its degree.
    pub p: String,
    pub d: usize,
    #[serde(rename = "H")]
    pub height: usize,
    pub charpoly: String,
    pub minpoly: String,
    pub checks: BTreeMap<Check, Verdict>,
    pub ms: u64,
}

impl ReportRecord {
    pub fn failed(&self) -> bool {
        self.checks.values().any(|v| !v.pass && !v.skipped)
    }

    pub fn skipped(&self) -> bool {
        self.checks.values().any(|v| v.skipped)
    }
}

/// The JSON schema every record validates against.
pub const RECORD_SCHEMA: &str = include_str!("../schema/record.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub enum Sink<W: Write> {
    Json(W),
    Csv { writer: csv::Writer<W>, checks: Vec<Check>, header_written: bool },
}

impl<W: Write> Sink<W> {
    pub fn new(format: Format, out: W, checks: &[Check]) -> Sink<W> {
        match format {
            Format::Json => Sink::Json(out),
            Format::Csv => Sink::Csv {
                writer: csv::Writer::from_writer(out),
                checks: checks.to_vec(),
                header_written: false,
            },
        }
    }

    pub fn write(&mut self, record: &ReportRecord) -> std::io::Result<()> {
        match self {
            Sink::Json(out) => {
                serde_json::to_writer(&mut *out, record)?;
                out.write_all(b"\n")
            }
            Sink::Csv { writer, checks, header_written } => {
                if !*header_written {
                    let mut header = vec!["q", "n", "r", "seed", "sample", "g"];
                    header.extend(checks.iter().map(|c| c.name()));
                    writer.write_record(&header)?;
                    *header_written = true;
                }
                let mut row = vec![
                    record.q.to_string(),
                    record.n.to_string(),
                    record.r.to_string(),
                    record.seed.to_string(),
                    record.sample.to_string(),
                    record.g.clone(),
                ];
                row.extend(checks.iter().map(|c| {
                    match record.checks.get(c) {
                        Some(v) if v.skipped => "skip",
                        Some(v) if v.pass => "pass",
                        Some(_) => "fail",
                        None => "",
                    }
                    .to_string()
                }));
                writer.write_record(&row)?;
                Ok(())
            }
        }
    }

    pub fn flush(&mut self) -> std::io::Result<()> {
        match self {
            Sink::Json(out) => out.flush(),
            Sink::Csv { writer, .. } => writer.flush(),
        }
    }
}
