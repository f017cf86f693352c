use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hk4_core::exact::{rational_sqrt_exact, Rational};
use hk4_core::pipeline::{
    self, emit_filter_report, emit_report, load_candidates, render_table1, table1, Branch,
    CandidateFile, PipelineError, ReportFormat, DEFAULT_PRIMES, DEFAULT_T_MAX,
};
use hk4_core::quotient::{
    lefschetz_euler_fixed, orbifold_salamon_defect, transport_betti, FixedLocusProfile, Prime,
};
use hk4_core::riemann_roch::{admits_zero_chi, delta, rr_chi_hk};
use hk4_core::topology::{betti_from_pair, euler_characteristic, salamon_defect, TopologyError};

#[derive(Parser)]
#[command(
    name = "hk4",
    version,
    about = "Exact replay of the hyperkähler 4-fold automorphism argument"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reproduce the table of Chern/Betti data admitting chi(W, L) = 0.
    Table1 {
        /// Candidate file; defaults to the built-in four-pair fixture.
        #[arg(long)]
        candidates: Option<PathBuf>,
        /// md, csv or json.
        #[arg(long, default_value = "md")]
        format: String,
    },
    /// Run the discriminant filter and write every record as JSON.
    Filter {
        /// Candidate CSV with a `b2,b3` header.
        #[arg(long)]
        candidates: PathBuf,
        /// Output path, `-` for stdout.
        #[arg(long)]
        out: PathBuf,
    },
    /// Emit a certificate for every (candidate, prime, t) triple.
    Prove {
        /// Candidate file; defaults to the built-in four-pair fixture.
        #[arg(long)]
        candidates: Option<PathBuf>,
        /// Comma-separated primes.
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_PRIMES)]
        primes: Vec<u64>,
        #[arg(long = "t-max", default_value_t = DEFAULT_T_MAX)]
        t_max: u32,
        /// Output path, `-` for stdout.
        #[arg(long)]
        out: PathBuf,
        /// json, csv or md.
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Evaluate chi(W, L) for a hyperkähler 4-fold with the given c4.
    Rr {
        #[arg(long, allow_hyphen_values = true)]
        c4: i64,
        /// Characteristic value as `p/q` or an integer.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Transport Betti numbers from X/<g> to its partial resolution.
    Transport {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        t: u32,
        /// `b2,b3` of X; b(X/<g>) = b(X).
        #[arg(long, value_delimiter = ',', required = true)]
        betti: Vec<i64>,
    },
}

/// Loads candidates and warns about invalid rows; `action` says what the
/// calling command does with them.
fn read_candidates(path: Option<&Path>, action: &str) -> Result<CandidateFile, PipelineError> {
    let file = match path {
        Some(p) => load_candidates(p)?,
        None => CandidateFile::builtin(),
    };
    for row in file.invalid_rows() {
        if let pipeline::RowStatus::Invalid(reason) = &row.status {
            eprintln!(
                "warning: line {}: ({}, {}) {action}: {reason}",
                row.line, row.b2, row.b3
            );
        }
    }
    Ok(file)
}

fn write_output(out: &Path, bytes: &[u8]) -> Result<(), PipelineError> {
    let io_err = |source| PipelineError::Write {
        path: out.to_path_buf(),
        source,
    };
    if out == Path::new("-") {
        let mut stdout = std::io::stdout().lock();
        stdout.write_all(bytes).map_err(io_err)?;
        stdout.flush().map_err(io_err)
    } else {
        std::fs::write(out, bytes).map_err(io_err)
    }
}

fn run(cli: Cli) -> Result<(), PipelineError> {
    match cli.command {
        Command::Table1 { candidates, format } => {
            let format: ReportFormat = format.parse()?;
            let file = read_candidates(candidates.as_deref(), "skipped")?;
            let report = table1(&file)?;
            write_output(Path::new("-"), &render_table1(&report, format)?)
        }
        Command::Filter { candidates, out } => {
            let file = read_candidates(Some(&candidates), "evaluated but invalid")?;
            let records = hk4_core::riemann_roch::filter_candidates(&file.pairs())?;
            let accepted = records.iter().filter(|r| r.accepted).count();
            write_output(&out, &emit_filter_report(&records, &file.digest)?)?;
            eprintln!("{accepted} of {} candidates accepted", records.len());
            Ok(())
        }
        Command::Prove {
            candidates,
            primes,
            t_max,
            out,
            format,
        } => {
            let format: ReportFormat = format.parse()?;
            let primes = primes
                .into_iter()
                .map(Prime::new)
                .collect::<Result<Vec<_>, _>>()?;
            let file = read_candidates(candidates.as_deref(), "skipped")?;
            let certs = pipeline::prove(&file, &primes, t_max)?;
            write_output(&out, &emit_report(&certs, format, &file.digest)?)?;
            let mismatch = certs
                .iter()
                .filter(|c| c.branch == Branch::LefschetzMismatch)
                .count();
            eprintln!(
                "{} certificates: {mismatch} LefschetzMismatch, {} Table1Exclusion",
                certs.len(),
                certs.len() - mismatch
            );
            Ok(())
        }
        Command::Rr { c4, lambda } => {
            let lambda: Rational = lambda.parse()?;
            let d = delta(c4);
            let sqrt =
                rational_sqrt_exact(&d).map_or_else(|| "none".to_string(), |s| s.to_string());
            let roots: Vec<String> = admits_zero_chi(c4)
                .iter()
                .map(ToString::to_string)
                .collect();
            println!("c4 = {c4}");
            println!("lambda = {lambda}");
            println!("chi = {}", rr_chi_hk(c4, &lambda));
            println!("delta = {d}");
            println!("delta_sqrt = {sqrt}");
            println!("roots = {{{}}}", roots.join(", "));
            Ok(())
        }
        Command::Transport { p, m, k, t, betti } => {
            let [b2, b3] = betti[..] else {
                return Err(TopologyError::Domain(format!(
                    "--betti takes exactly two values b2,b3, got {}",
                    betti.len()
                ))
                .into());
            };
            let profile = FixedLocusProfile::new(Prime::new(p)?, m, k, t);
            let b_y = betti_from_pair(b2, b3)?.relaxed();
            let b_w = transport_betti(&b_y, &profile)?;
            println!("b(Y) = {b_y}");
            println!("b(W) = {b_w}");
            println!("chi_top(Y) = {}", euler_characteristic(&b_y));
            println!("chi_top(W) = {}", euler_characteristic(&b_w));
            println!("chi_top(X^g) = {}", lefschetz_euler_fixed(&profile));
            println!("salamon_defect(W) = {}", salamon_defect(&b_w));
            println!(
                "orbifold_salamon_defect(W) = {}",
                orbifold_salamon_defect(&b_w, &profile)
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
