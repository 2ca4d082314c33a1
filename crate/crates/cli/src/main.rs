use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use drinfeld_core::{Caps, CharPoly, CharPolyKind, DrinfeldModule};
use drinfeld_rh::{check_module, run, Check, CheckList, Format, Outcome, RunConfig, Sink, Span, RECORD_SCHEMA};

#[derive(Parser)]
#[command(name = "drinfeld-rh", version, about = "Check the Riemann hypothesis for sampled Drinfeld modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample modules over a parameter grid and check each one.
    Verify(VerifyArgs),
    /// Check one module given in text form.
    Check(CheckArgs),
    /// Print the JSON schema of report records.
    Schema,
}

#[derive(Args)]
struct Common {
    /// Comma list of checks, or "all".
    #[arg(long, default_value = "all")]
    checks: CheckList,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest torsion field, as log2 of its size.
    #[arg(long, default_value_t = Caps::default().max_field_bits)]
    max_field_bits: u32,
    /// Largest torsion field degree, as a multiple of n.
    #[arg(long, default_value_t = Caps::default().max_ext_multiple)]
    max_ext_multiple: usize,
    /// Output path, or "-" for stdout.
    #[arg(long, default_value = "-")]
    out: String,
    /// Write 0 in the "ms" field so output is byte-identical across runs.
    #[arg(long)]
    no_timing: bool,
}

impl Common {
    fn caps(&self) -> Caps {
        Caps { max_field_bits: self.max_field_bits, max_ext_multiple: self.max_ext_multiple }
    }

    fn checks(&self) -> Vec<Check> {
        self.checks.0.clone()
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// Size of the constant field F_q, a prime power
    #[arg(long)]
    q: u64,
    /// Extension degree [k:F_q], a value or a range a:b.
    #[arg(long)]
    n: Span,
    /// Rank, a value or a range a:b.
    #[arg(long)]
    r: Span,
    /// Modules per (n, r) cell
    #[arg(long, default_value_t = 1)]
    samples: usize,
    /// Seed for module and check sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct CheckArgs {
    /// Module as "q=..,n=..,g=g0;g1;...".
    #[arg(long)]
    module: String,
    /// Claimed Frobenius characteristic polynomial "a0|a1|...|1"; computed if absent.
    #[arg(long)]
    charpoly: Option<String>,
    /// Seed for check sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: Common,
}

fn open(out: &str) -> io::Result<Box<dyn Write>> {
    Ok(if out == "-" {
        Box::new(BufWriter::new(io::stdout().lock()))
    } else {
        Box::new(BufWriter::new(File::create(PathBuf::from(out))?))
    })
}

fn usage(message: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(Outcome::Usage.code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Schema => {
            println!("{RECORD_SCHEMA}");
            Outcome::Pass
        }
        Command::Verify(args) => {
            let config = RunConfig {
                q: args.q,
                n: args.n.0,
                r: args.r.0,
                samples: args.samples,
                seed: args.seed,
                checks: args.common.checks(),
                format: args.common.format,
                caps: args.common.caps(),
                jobs: args.jobs,
                timing: !args.common.no_timing,
            };
            if let Err(e) = config.validate() {
                return usage(e);
            }
            let out = match open(&args.common.out) {
                Ok(out) => out,
                Err(e) => return usage(format!("{}: {e}", args.common.out)),
            };
            match run(&config, out) {
                Ok(outcome) => outcome,
                Err(e) => return usage(e),
            }
        }
        Command::Check(args) => {
            let phi = match DrinfeldModule::parse(&args.module) {
                Ok(phi) => phi,
                Err(e) => return usage(e),
            };
            let charpoly = match args.charpoly.as_deref().map(|text| {
                CharPoly::parse(phi.fq(), text, CharPolyKind::Characteristic { power: None })
            }) {
                None => None,
                Some(Ok(p)) => Some(p),
                Some(Err(e)) => return usage(e),
            };
            let checks = args.common.checks();
            let record = check_module(&phi, charpoly, &checks, &args.common.caps(), args.seed, 0, !args.common.no_timing);
            let written = open(&args.common.out).and_then(|out| {
                let mut sink = Sink::new(args.common.format, out, &checks);
                sink.write(&record)?;
                sink.flush()
            });
            if let Err(e) = written {
                return usage(format!("{}: {e}", args.common.out));
            }
            Outcome::of([&record])
        }
    };
    ExitCode::from(outcome.code() as u8)
}
