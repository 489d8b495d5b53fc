use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod output;
mod verify;

use config::{ConfigFile, Overrides, RunConfig};
use verify::{Check, Verdict};

#[derive(Debug)]
pub enum Failure {
    Io(String),
    Validation(String),
    /// An exact check came out false.
    Check(String),
    Budget(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Validation(_) | Failure::Check(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Io(m) | Failure::Validation(m) | Failure::Check(m) | Failure::Budget(m) => m,
        }
    }
}

impl From<elastika_core::Error> for Failure {
    fn from(e: elastika_core::Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

#[derive(Parser)]
#[command(name = "elastika", version, about = "Factorization invariants and elasticity spectra of commutative monoids")]
struct Cli {
    #[command(flatten)]
    flags: Flags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Flags {
    /// Grading bound for spectra and element enumeration.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Denominator bound for rationals in an interval.
    #[arg(long, global = true)]
    denoms: Option<u64>,
    /// Largest k for witness chains and nice-pair tables.
    #[arg(long, global = true)]
    kmax: Option<u64>,
    /// Node budget per search.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Directory for CSV output.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Seed for randomized suites.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// JSON run file with any of the flags above as keys.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Atoms, ρ(H) with a witness, and r with a minimizing atom.
    Invariants { monoid: PathBuf },
    /// Set of lengths and elasticities of one element.
    Element { monoid: PathBuf, element: String },
    /// Realized elasticities of elements up to the grading bound.
    Spectrum { monoid: PathBuf },
    /// Run a check and print PASS, UNRESOLVED or FAIL.
    Verify {
        check: Check,
        monoid: Option<PathBuf>,
        /// Number of random cases for lemma3_2.
        #[arg(long, default_value_t = 1000)]
        random: u64,
    },
    /// Engine factorizations against brute-force enumeration.
    Oracle { monoid: PathBuf, element: String },
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let f = cli.flags;
    let file = match &f.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    let flags = Overrides {
        bound: f.bound,
        denoms: f.denoms,
        kmax: f.kmax,
        budget: f.budget,
        out: f.out,
        seed: f.seed,
        jobs: f.jobs,
    };
    let (name, input) = match &cli.command {
        Command::Invariants { monoid } => ("invariants", Some(monoid.clone())),
        Command::Element { monoid, .. } => ("element", Some(monoid.clone())),
        Command::Spectrum { monoid } => ("spectrum", Some(monoid.clone())),
        Command::Verify { monoid, .. } => ("verify", monoid.clone()),
        Command::Oracle { monoid, .. } => ("oracle", Some(monoid.clone())),
    };
    let cfg = RunConfig::resolve(name, input, flags, file)?;
    if let Some(n) = cfg.jobs {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Invariants { .. } => commands::cmd_invariants(&cfg)?,
        Command::Element { element, .. } => commands::cmd_element(&cfg, &element)?,
        Command::Spectrum { .. } => commands::cmd_spectrum(&cfg)?,
        Command::Oracle { element, .. } => commands::cmd_oracle(&cfg, &element)?,
        Command::Verify { check, random, .. } => {
            return Ok(match verify::cmd_verify(&cfg, check, random)? {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::from(2),
                Verdict::Unresolved => ExitCode::from(3),
            })
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
