//! Command-line frontend: construct self-dual (integral) normal basis
//! generators and emit them as self-contained JSON certificates, or re-verify
//! an existing certificate from scratch.
//!
//! Exit codes: 0 success; 2 bad parameters, provable non-existence, or a
//! malformed certificate; 3 insufficient working precision; 1 verification
//! failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use sdnb::cert;
use sdnb::error::Error;

const DEFAULT_PREC: usize = 48;
const GUARD: usize = 8;

#[derive(Parser)]
#[command(
    name = "sdnb",
    version,
    about = "Explicit self-dual normal basis generators with machine-checkable certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Self-dual normal basis generator for F_{q^n}/F_q, q = p^m
    Ff(FfArgs),
    /// Self-dual integral normal basis generators over p-adic fields
    Local(LocalArgs),
    /// Re-verify a certificate document from scratch
    Verify(VerifyArgs),
}

#[derive(Args)]
struct FfArgs {
    /// Field characteristic (prime)
    #[arg(long)]
    p: u64,
    /// Degree of the base field F_q over F_p
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Extension degree n of F_{q^n}/F_q
    #[arg(long)]
    n: u64,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct LocalArgs {
    #[command(subcommand)]
    kind: LocalKind,
}

#[derive(Subcommand)]
enum LocalKind {
    /// Totally tamely ramified Kummer extension K(t), t^d = -p
    Tame(DegreeArgs),
    /// Unramified extension of degree d
    Unram(DegreeArgs),
    /// Ramified degree-p extension of Q_p from a Lubin-Tate division field
    Wild(WildArgs),
    /// Compositum of an unramified and a tame extension, optionally traced
    /// down a subgroup
    Compose(ComposeArgs),
}

#[derive(Args)]
struct DegreeArgs {
    /// Residue characteristic (odd prime)
    #[arg(long)]
    p: u64,
    /// Residue degree of the base field K over Q_p
    #[arg(long, default_value_t = 1)]
    f: usize,
    /// Extension degree
    #[arg(long)]
    d: u64,
    /// Working precision in base-p digits (default: SDNB_PREC or 48)
    #[arg(long)]
    prec: Option<usize>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct WildArgs {
    /// Residue characteristic (odd prime); the extension has degree p over Q_p
    #[arg(long)]
    p: u64,
    /// Working precision in base-p digits (default: SDNB_PREC or 48)
    #[arg(long)]
    prec: Option<usize>,
    /// Order of the subgroup to trace down by (only 1, the trivial trace,
    /// yields a certificate)
    #[arg(long)]
    trace_to: Option<u64>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct ComposeArgs {
    /// Residue characteristic (odd prime)
    #[arg(long)]
    p: u64,
    /// Residue degree of the base field K over Q_p
    #[arg(long, default_value_t = 1)]
    f: usize,
    /// Degree of the unramified part
    #[arg(long)]
    unram_d: u64,
    /// Degree of the tame Kummer part
    #[arg(long)]
    tame_d: u64,
    /// Trace down the diagonal subgroup instead of certifying the full
    /// compositum
    #[arg(long)]
    trace_diag: bool,
    /// Working precision in base-p digits (default: SDNB_PREC or 48)
    #[arg(long)]
    prec: Option<usize>,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Args)]
struct VerifyArgs {
    /// Certificate file to verify
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Args)]
struct OutArg {
    /// Also write the certificate to this file
    #[arg(long)]
    out: Option<PathBuf>,
}

fn working_prec(cli: Option<usize>) -> Result<usize, Error> {
    if let Some(w) = cli {
        return Ok(w);
    }
    match std::env::var("SDNB_PREC") {
        Ok(s) => s
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&w| w > 0)
            .ok_or_else(|| Error::Parameter(format!("SDNB_PREC must be a positive integer, got {s:?}"))),
        Err(_) => Ok(DEFAULT_PREC),
    }
}

fn emit(doc: &cert::CertificateDocument, out: &OutArg) -> Result<(), Error> {
    let text = cert::render(doc)?;
    if let Some(path) = &out.out {
        std::fs::write(path, &text)
            .map_err(|e| Error::Internal(format!("cannot write {}: {e}", path.display())))?;
    }
    print!("{text}");
    std::io::stdout().flush().ok();
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Ff(a) => emit(&cert::ff_document(a.p, a.m, a.n)?, &a.out),
        Command::Local(l) => match l.kind {
            LocalKind::Tame(a) => {
                let w = working_prec(a.prec)?;
                emit(&cert::tame_document(a.p, a.f, a.d, w, GUARD)?, &a.out)
            }
            LocalKind::Unram(a) => {
                let w = working_prec(a.prec)?;
                emit(&cert::unram_document(a.p, a.f, a.d, w, GUARD)?, &a.out)
            }
            LocalKind::Wild(a) => {
                let w = working_prec(a.prec)?;
                emit(&cert::wild_document(a.p, w, GUARD, a.trace_to)?, &a.out)
            }
            LocalKind::Compose(a) => {
                let w = working_prec(a.prec)?;
                emit(
                    &cert::compose_document(a.p, a.f, a.unram_d, a.tame_d, a.trace_diag, w, GUARD)?,
                    &a.out,
                )
            }
        },
        Command::Verify(a) => {
            let text = std::fs::read_to_string(&a.input).map_err(|e| {
                Error::Malformed(format!("cannot read certificate file {}: {e}", a.input.display()))
            })?;
            let summary = cert::verify_document(&text)?;
            println!("{summary}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
