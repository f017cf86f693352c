//! Candidate `(b₂, b₃)` files.
//!
//! Format: UTF-8 text, LF or CRLF. Lines starting with `#` are comments and
//! make up the provenance note. The first other line is the header `b2,b3`;
//! every following line holds two comma-separated nonnegative integers.
//! Blank lines are ignored.

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::topology::{betti_from_pair, BettiTable};

/// The four pairs of the published table, in table order.
pub const TABLE1_FIXTURE: &str = include_str!("../../data/table1_pairs.csv");

/// Blank template for transcribing a full list of admissible pairs.
pub const CANDIDATE_TEMPLATE: &str = include_str!("../../data/candidates_template.csv");

#[derive(Debug, Error)]
pub enum CandidateError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: not valid UTF-8")]
    Encoding { path: PathBuf },
    #[error("missing header line `b2,b3`")]
    MissingHeader,
    #[error("line {line}: malformed header {found:?}, expected `b2,b3`")]
    MalformedHeader { line: usize, found: String },
    #[error("line {line}: expected 2 comma-separated fields, found {count}")]
    FieldCount { line: usize, count: usize },
    #[error("line {line}: {field} = {text:?} is not a nonnegative integer")]
    BadField {
        line: usize,
        field: &'static str,
        text: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum RowStatus {
    Valid,
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateRow {
    /// 1-based line number in the source text.
    pub line: usize,
    pub b2: i64,
    pub b3: i64,
    pub status: RowStatus,
}

impl CandidateRow {
    pub fn is_valid(&self) -> bool {
        self.status == RowStatus::Valid
    }

    pub fn betti(&self) -> Option<BettiTable> {
        self.is_valid()
            .then(|| betti_from_pair(self.b2, self.b3).ok())
            .flatten()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateFile {
    pub path: Option<PathBuf>,
    pub rows: Vec<CandidateRow>,
    pub provenance: String,
    /// `sha256:<hex>` of the raw input bytes.
    pub digest: String,
}

impl CandidateFile {
    /// The built-in four-pair fixture.
    pub fn builtin() -> Self {
        parse_candidates(TABLE1_FIXTURE, None).expect("built-in fixture parses")
    }

    pub fn pairs(&self) -> Vec<(i64, i64)> {
        self.rows.iter().map(|r| (r.b2, r.b3)).collect()
    }

    /// Pairs of the rows that passed validation, in file order.
    pub fn valid_pairs(&self) -> Vec<(i64, i64)> {
        self.valid_rows().map(|r| (r.b2, r.b3)).collect()
    }

    pub fn valid_rows(&self) -> impl Iterator<Item = &CandidateRow> {
        self.rows.iter().filter(|r| r.is_valid())
    }

    pub fn invalid_rows(&self) -> impl Iterator<Item = &CandidateRow> {
        self.rows.iter().filter(|r| !r.is_valid())
    }

    /// Builds a file from in-memory pairs by rendering them in the text format.
    pub fn from_pairs(pairs: &[(i64, i64)], provenance: &str) -> Result<Self, CandidateError> {
        let mut text = String::new();
        for line in provenance.lines() {
            text.push_str("# ");
            text.push_str(line);
            text.push('\n');
        }
        text.push_str("b2,b3\n");
        for (b2, b3) in pairs {
            text.push_str(&format!("{b2},{b3}\n"));
        }
        parse_candidates(&text, None)
    }
}

pub fn digest_bytes(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn load_candidates(path: impl AsRef<Path>) -> Result<CandidateFile, CandidateError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| CandidateError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = std::str::from_utf8(&bytes).map_err(|_| CandidateError::Encoding {
        path: path.to_path_buf(),
    })?;
    parse_candidates(text, Some(path.to_path_buf()))
}

fn parse_field(line: usize, field: &'static str, text: &str) -> Result<i64, CandidateError> {
    let text = text.trim();
    let bad = || CandidateError::BadField {
        line,
        field,
        text: text.to_string(),
    };
    if text.is_empty() || !text.bytes().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    text.parse().map_err(|_| bad())
}

pub fn parse_candidates(
    text: &str,
    path: Option<PathBuf>,
) -> Result<CandidateFile, CandidateError> {
    let digest = digest_bytes(text.as_bytes());
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);

    let mut provenance = Vec::new();
    let mut header_seen = false;
    let mut rows = Vec::new();
    let mut first_seen: HashMap<(i64, i64), usize> = HashMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if let Some(comment) = trimmed.strip_prefix('#') {
            provenance.push(comment.trim().to_string());
            continue;
        }
        if trimmed.is_empty() {
            continue;
        }
        if !header_seen {
            let fields: Vec<&str> = trimmed.split(',').map(str::trim).collect();
            if fields != ["b2", "b3"] {
                return Err(CandidateError::MalformedHeader {
                    line,
                    found: trimmed.to_string(),
                });
            }
            header_seen = true;
            continue;
        }
        let fields: Vec<&str> = trimmed.split(',').collect();
        if fields.len() != 2 {
            return Err(CandidateError::FieldCount {
                line,
                count: fields.len(),
            });
        }
        let b2 = parse_field(line, "b2", fields[0])?;
        let b3 = parse_field(line, "b3", fields[1])?;

        let status = if let Some(&prev) = first_seen.get(&(b2, b3)) {
            RowStatus::Invalid(format!("duplicate of line {prev}"))
        } else {
            first_seen.insert((b2, b3), line);
            match betti_from_pair(b2, b3) {
                Ok(_) => RowStatus::Valid,
                Err(e) => RowStatus::Invalid(e.to_string()),
            }
        };
        rows.push(CandidateRow {
            line,
            b2,
            b3,
            status,
        });
    }

    if !header_seen {
        return Err(CandidateError::MissingHeader);
    }
    Ok(CandidateFile {
        path,
        rows,
        provenance: provenance.join("\n"),
        digest,
    })
}
