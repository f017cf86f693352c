//! Candidate ingestion, the contradiction replay and report emission.

pub mod candidates;
pub mod prove;
pub mod report;

use thiserror::Error;

pub use candidates::{load_candidates, parse_candidates, CandidateFile, CandidateRow, RowStatus};
pub use prove::{certify, prove, Branch, Certificate, Detail, Hypothesis, VerificationError};
pub use report::{emit_filter_report, emit_report, render_table1, table1, ReportFormat};

/// Default sweep: primes and maximal number of torus components.
pub const DEFAULT_PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
pub const DEFAULT_T_MAX: u32 = 20;

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Candidates(#[from] candidates::CandidateError),
    #[error(transparent)]
    Report(#[from] report::ReportError),
    #[error(transparent)]
    Quotient(#[from] crate::quotient::QuotientError),
    #[error(transparent)]
    Exact(#[from] crate::exact::ExactError),
    #[error(transparent)]
    Topology(#[from] crate::topology::TopologyError),
    #[error("verification failed: {0}")]
    Verification(#[from] VerificationError),
    #[error("cannot write {path}: {source}")]
    Write {
        path: std::path::PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl PipelineError {
    /// 1 for usage or input problems, 2 when a verification check fails.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Verification(_) => 2,
            _ => 1,
        }
    }
}
