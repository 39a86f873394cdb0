//! `lattice-lab`: build lattices, compute invariants with certificates, and
//! run the regression reports.

mod commands;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lattice_lab_core::LatticeError;

/// Exit codes.
pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_PARTIAL: u8 = 2;
pub const EXIT_VERIFY: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exhaustive,
    Witness,
    User,
}

#[derive(Parser, Debug)]
#[command(
    name = "lattice-lab",
    version,
    about = "Unimodular lattice invariants and zeta checks"
)]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true, env = "LATTICE_LAB_THREADS")]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: Format,
    #[command(subcommand)]
    command: Command,
}

/// Lattices are given as `named:<name>`, a catalog name, a path to a JSON
/// spec, or inline JSON.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate a lattice and print its canonical JSON.
    Build {
        lattice: String,
        /// Also write the canonical JSON here.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Compute m, f2, f4, e0 or ep and emit a certificate.
    Invariant {
        #[arg(value_parser = ["m", "f2", "f4", "e0", "ep"])]
        name: String,
        lattice: String,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        #[arg(long, default_value_t = lattice_lab_core::invariants::DEFAULT_NORM_BOUND)]
        norm_bound: i64,
        /// Lattice coordinates of `w` for user mode, comma separated.
        #[arg(long, allow_hyphen_values = true)]
        witness: Option<String>,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long)]
        budget_seconds: Option<u64>,
        /// Allow exhaustive scans above rank 18.
        #[arg(long)]
        force: bool,
        /// Also write the certificate here.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Minimal vectors of one class of L/2L.
    Minima {
        lattice: String,
        /// Class as a bit string, bit i for basis vector i.
        #[arg(long, conflicts_with = "vector")]
        class: Option<String>,
        /// A vector of the class, comma separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
        #[arg(long)]
        budget_seconds: Option<u64>,
    },
    /// Root system and its ADE decomposition.
    Roots { lattice: String },
    /// Minimal norm of characteristic vectors.
    CharMin { lattice: String },
    Report {
        #[command(subcommand)]
        which: ReportKind,
    },
    Census {
        #[command(subcommand)]
        which: CensusKind,
    },
    /// The zeta polynomials and the integrality conjecture.
    Ring {
        #[command(subcommand)]
        which: RingCommand,
    },
    /// Re-check a certificate produced by `invariant --output json`.
    VerifyCertificate { certificate: std::path::PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum ReportKind {
    /// Root counts, characteristic minima and invariants for Elkies' list.
    Elkies {
        #[arg(long)]
        budget_seconds: Option<u64>,
        /// Witness-mode bound for ranks above 16.
        #[arg(long, default_value_t = 5)]
        norm_bound: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CensusKind {
    /// Coset census and eta claims for E7^2.
    E72,
}

#[derive(Subcommand, Debug)]
pub enum RingCommand {
    /// Print zeta_r.
    Zeta {
        r: usize,
        /// Substitute beta = alpha^2 + 8 eps.
        #[arg(long)]
        epsilon: bool,
        /// Set gamma = 0 in the recursion.
        #[arg(long)]
        prime: bool,
    },
    /// Rows g = 1..=G of (2g-3)!! zeta_g / g!.
    Table3 { g_max: usize },
    /// Check the conjecture for every g up to the bound.
    Verify {
        #[arg(long, default_value_t = 256)]
        up_to: usize,
        /// Also run the xi coefficient criterion.
        #[arg(long)]
        xi: bool,
    },
}

/// An error with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        let code = match e {
            LatticeError::Budget { .. } => EXIT_PARTIAL,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast::<LatticeError>() {
            Ok(le) => le.into(),
            Err(e) => Failure {
                code: EXIT_INVALID,
                message: format!("{e:#}"),
            },
        }
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is reserved for partial results
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(EXIT_INVALID);
        }
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let format = cli.output;
    match commands::run(cli.command, format) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match format {
                Format::Json => {
                    let v = serde_json::json!({"error": f.message, "exit_code": f.code});
                    println!("{}", serde_json::to_string_pretty(&v).unwrap_or_default());
                }
                Format::Text => eprintln!("error: {}", f.message),
            }
            ExitCode::from(f.code)
        }
    }
}
