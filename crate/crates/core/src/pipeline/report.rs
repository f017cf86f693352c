//! Deterministic rendering of certificates, the Table 1 reproduction and
//! filter output.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::pipeline::candidates::CandidateFile;
use crate::pipeline::prove::{Certificate, Detail};
use crate::riemann_roch::{filter_candidates, CandidateRecord};
use crate::topology::TopologyError;
use crate::VERSION;

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("unsupported format {0:?} (expected json, csv or md)")]
    UnsupportedFormat(String),
    #[error("serialization failed: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
    Markdown,
}

impl FromStr for ReportFormat {
    type Err = ReportError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            "md" | "markdown" => Ok(ReportFormat::Markdown),
            _ => Err(ReportError::UnsupportedFormat(s.to_string())),
        }
    }
}

const FILTER_NOTE: &str =
    "Accepted rows are the candidates of the supplied list whose Riemann-Roch \
quadratic has a rational root; they are computed from the input, not taken from a reference.";

#[derive(Serialize)]
struct CertificateReport<'a> {
    version: &'a str,
    input_digest: &'a str,
    certificates: Vec<&'a Certificate>,
}

fn csv_to_bytes(header: &[&str], rows: Vec<Vec<String>>) -> Result<Vec<u8>, ReportError> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(vec![]);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.into_inner()
        .map_err(|e| ReportError::Csv(e.into_error().into()))
}

fn detail_cell(cert: &Certificate, key: &str) -> String {
    cert.detail(key).map(Detail::to_string).unwrap_or_default()
}

/// Serializes certificates sorted by `(b₂, b₃, p, t)`.
pub fn emit_report(
    certs: &[Certificate],
    format: ReportFormat,
    input_digest: &str,
) -> Result<Vec<u8>, ReportError> {
    let mut sorted: Vec<&Certificate> = certs.iter().collect();
    sorted.sort_by_key(|c| c.sort_key());

    match format {
        ReportFormat::Json => {
            let report = CertificateReport {
                version: VERSION,
                input_digest,
                certificates: sorted,
            };
            let mut out = serde_json::to_vec_pretty(&report)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => {
            let header = [
                "version",
                "input_digest",
                "b2",
                "b3",
                "prime",
                "t",
                "branch",
                "m",
                "k",
                "chi_top_x",
                "chi_top_fixed",
                "b2_w",
                "b3_w",
                "c4_w",
                "delta",
                "lambda_roots",
                "hypotheses",
            ];
            let rows = sorted
                .iter()
                .map(|c| {
                    let mut row = vec![
                        VERSION.to_string(),
                        input_digest.to_string(),
                        c.candidate.b2.to_string(),
                        c.candidate.b3.to_string(),
                        c.prime.to_string(),
                        c.t.to_string(),
                        c.branch.to_string(),
                    ];
                    for key in [
                        "m",
                        "k",
                        "chi_top_x",
                        "chi_top_fixed",
                        "b2_w",
                        "b3_w",
                        "c4_w",
                        "delta",
                        "lambda_roots",
                    ] {
                        row.push(detail_cell(c, key));
                    }
                    let ids: Vec<&str> = c.hypotheses.iter().map(|h| h.id()).collect();
                    row.push(ids.join(";"));
                    row
                })
                .collect();
            csv_to_bytes(&header, rows)
        }
        ReportFormat::Markdown => {
            let mut s = String::new();
            writeln!(s, "# Certificates").unwrap();
            writeln!(s).unwrap();
            writeln!(s, "- version: {VERSION}").unwrap();
            writeln!(s, "- input digest: `{input_digest}`").unwrap();
            writeln!(s, "- certificates: {}", sorted.len()).unwrap();
            writeln!(s).unwrap();
            writeln!(
                s,
                "| b2 | b3 | p | t | branch | m | k | chi_top(X) | chi_top(X^g) | c4(W) | delta | lambda roots |"
            )
            .unwrap();
            writeln!(s, "|---|---|---|---|---|---|---|---|---|---|---|---|").unwrap();
            for c in &sorted {
                writeln!(
                    s,
                    "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                    c.candidate.b2,
                    c.candidate.b3,
                    c.prime,
                    c.t,
                    c.branch,
                    detail_cell(c, "m"),
                    detail_cell(c, "k"),
                    detail_cell(c, "chi_top_x"),
                    detail_cell(c, "chi_top_fixed"),
                    detail_cell(c, "c4_w"),
                    detail_cell(c, "delta"),
                    detail_cell(c, "lambda_roots"),
                )
                .unwrap();
            }
            let mut hyps: Vec<_> = sorted
                .iter()
                .flat_map(|c| c.hypotheses.iter().copied())
                .collect();
            hyps.sort();
            hyps.dedup();
            if !hyps.is_empty() {
                writeln!(s).unwrap();
                writeln!(s, "## Hypotheses").unwrap();
                writeln!(s).unwrap();
                for h in hyps {
                    writeln!(s, "- `{}`: {}", h.id(), h.statement()).unwrap();
                }
            }
            Ok(s.into_bytes())
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Table1Row {
    pub no: usize,
    pub c2sq: i64,
    pub c4: i64,
    pub b2: i64,
    pub b3: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table1Report {
    pub version: String,
    pub input_digest: String,
    pub rows: Vec<Table1Row>,
    pub note: String,
}

/// Accepted candidates ordered by `(−b₂, −b₃)` and numbered from 1.
pub fn table1(candidates: &CandidateFile) -> Result<Table1Report, ReportError> {
    let records = filter_candidates(&candidates.valid_pairs())?;
    let mut accepted: Vec<&CandidateRecord> = records.iter().filter(|r| r.accepted).collect();
    accepted.sort_by_key(|r| (-r.b2, -r.b3));
    let rows = accepted
        .iter()
        .enumerate()
        .map(|(i, r)| Table1Row {
            no: i + 1,
            c2sq: r.chern.c2sq,
            c4: r.chern.c4,
            b2: r.b2,
            b3: r.b3,
        })
        .collect();
    Ok(Table1Report {
        version: VERSION.to_string(),
        input_digest: candidates.digest.clone(),
        rows,
        note: FILTER_NOTE.to_string(),
    })
}

pub fn render_table1(report: &Table1Report, format: ReportFormat) -> Result<Vec<u8>, ReportError> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        ReportFormat::Csv => csv_to_bytes(
            &["No.", "c2^2", "c4", "b2", "b3"],
            report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.no.to_string(),
                        r.c2sq.to_string(),
                        r.c4.to_string(),
                        r.b2.to_string(),
                        r.b3.to_string(),
                    ]
                })
                .collect(),
        ),
        ReportFormat::Markdown => {
            let mut s = String::new();
            writeln!(s, "| No. | c2^2 | c4 | b2 | b3 |").unwrap();
            writeln!(s, "|---|---|---|---|---|").unwrap();
            for r in &report.rows {
                writeln!(
                    s,
                    "| {} | {} | {} | {} | {} |",
                    r.no, r.c2sq, r.c4, r.b2, r.b3
                )
                .unwrap();
            }
            writeln!(s).unwrap();
            writeln!(s, "{}", report.note).unwrap();
            Ok(s.into_bytes())
        }
    }
}

#[derive(Serialize)]
struct FilterReport<'a> {
    version: &'a str,
    input_digest: &'a str,
    note: &'a str,
    records: &'a [CandidateRecord],
}

/// JSON dump of every filter record, accepted or not, in input order.
pub fn emit_filter_report(
    records: &[CandidateRecord],
    input_digest: &str,
) -> Result<Vec<u8>, ReportError> {
    let report = FilterReport {
        version: VERSION,
        input_digest,
        note: FILTER_NOTE,
        records,
    };
    let mut out = serde_json::to_vec_pretty(&report)?;
    out.push(b'\n');
    Ok(out)
}
