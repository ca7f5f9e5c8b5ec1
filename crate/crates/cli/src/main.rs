//! `arithcorr`: m-sequence generation and arithmetic autocorrelation sweeps.
//!
//! Exit codes: 0 success (or conjecture holds), 1 conjecture violation found,
//! 2 usage error, 3 invalid mathematical input, 4 oracle disagreement.

mod config;
mod output;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use arithcorr::bitseq::{BitVector, PeriodicSequence};
use arithcorr::correlation::{
    arithmetic_autocorrelation, conjecture_check, spectrum, table1_report, validated_autocorrelation,
    CorrelationSpectrum, SweepConfig, Validation, DEFAULT_SWEEP_CAP,
};
use arithcorr::gf2poly::{enumerate_primitive, Gf2Poly};
use arithcorr::lfsr::{generate_m_sequence, LfsrSpec};
use arithcorr::report::LabeledSpectrum;
use arithcorr::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "arithcorr", version, about = "Arithmetic autocorrelation of binary m-sequences")]
struct Cli {
    /// Worker threads for sweeps (default: machine parallelism)
    #[arg(long, global = true, env = "ARITHCORR_JOBS")]
    jobs: Option<usize>,

    /// Write the report to this file instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    /// key=value file mirroring the flags; explicit flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List all primitive polynomials of a degree
    Primpolys {
        #[arg(long)]
        degree: u32,
    },
    /// Print one period of the m-sequence of a primitive polynomial
    Gen {
        /// Polynomial as hex (0x13) or monomials (x^4+x+1)
        #[arg(long)]
        poly: String,
        /// Initial state s_0..s_{n-1} as a bit string, or "canonical" (0...01)
        #[arg(long, default_value = "canonical")]
        init: String,
    },
    /// Arithmetic autocorrelation of a sequence at one shift or all shifts
    Acorr(AcorrArgs),
    /// Primitive-polynomial counts and value sets per degree
    Table1 {
        #[arg(long)]
        nmin: u32,
        #[arg(long)]
        nmax: u32,
        #[command(flatten)]
        sweep: SweepArgs,
    },
    /// Check the value-distribution conjecture over every m-sequence of a degree
    Conjecture {
        #[arg(long)]
        degree: u32,
        #[command(flatten)]
        sweep: SweepArgs,
    },
}

#[derive(Args, Debug)]
struct AcorrArgs {
    /// Explicit period as a 0/1 string, index 0 leftmost
    #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
    seq: Option<String>,
    /// Primitive polynomial generating the sequence
    #[arg(long)]
    poly: Option<String>,
    /// Initial state when --poly is given
    #[arg(long, default_value = "canonical", requires = "poly")]
    init: String,
    /// Single shift, -T < tau < T (negative values are reduced mod T)
    #[arg(long, allow_hyphen_values = true, conflicts_with = "all", required_unless_present = "all")]
    tau: Option<i64>,
    /// Every shift 1 <= tau < T
    #[arg(long)]
    all: bool,
    #[command(flatten)]
    validation: ValidationArgs,
}

#[derive(Args, Debug)]
struct ValidationArgs {
    /// Cross-check every record against all three computation routes
    #[arg(long, conflicts_with = "no_validate")]
    validate: bool,
    /// Skip the cross-check even for small periods
    #[arg(long)]
    no_validate: bool,
}

impl ValidationArgs {
    fn mode(&self) -> Validation {
        match (self.validate, self.no_validate) {
            (true, _) => Validation::On,
            (_, true) => Validation::Off,
            _ => Validation::Auto,
        }
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    validation: ValidationArgs,
    /// Highest degree accepted by the sweep
    #[arg(long, default_value_t = DEFAULT_SWEEP_CAP)]
    max_degree: u32,
}

impl SweepArgs {
    fn config(&self) -> SweepConfig {
        SweepConfig {
            max_degree: self.max_degree,
            validation: self.validation.mode(),
        }
    }
}

/// Report text plus the exit code it carries.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::AllZeroSequence
        | Error::PeriodTooShort(_)
        | Error::NotPrimitive(_)
        | Error::AllZeroState
        | Error::PeriodNotExact { .. }
        | Error::NotShiftAndAdd(_) => 3,
        Error::OracleMismatch { .. } | Error::PeriodicityNotDetected(_) => 4,
        _ => 2,
    }
}

fn parse_poly(s: &str) -> Result<Gf2Poly, Error> {
    s.parse()
}

fn lfsr_spec(poly: &str, init: &str) -> Result<LfsrSpec, Error> {
    let poly = parse_poly(poly)?;
    if init.eq_ignore_ascii_case("canonical") {
        LfsrSpec::canonical(poly)
    } else {
        LfsrSpec::new(poly, init.parse::<BitVector>()?)
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Primpolys { degree } => {
            let polys = enumerate_primitive(*degree)?;
            Ok(Outcome::ok(output::primpolys(*degree, &polys, format)))
        }
        Command::Gen { poly, init } => {
            let spec = lfsr_spec(poly, init)?;
            let s = generate_m_sequence(&spec)?;
            Ok(Outcome::ok(output::generated(&spec, &s, format)))
        }
        Command::Acorr(args) => acorr(args, format),
        Command::Table1 { nmin, nmax, sweep } => {
            let rows = table1_report(*nmin, *nmax, &sweep.config())?;
            Ok(Outcome::ok(output::table1(&rows, format)?))
        }
        Command::Conjecture { degree, sweep } => {
            let report = conjecture_check(*degree, &sweep.config())?;
            let code = if report.holds() { 0 } else { 1 };
            Ok(Outcome {
                text: output::conjecture(&report, format)?,
                code,
            })
        }
    }
}

fn acorr(args: &AcorrArgs, format: Format) -> anyhow::Result<Outcome> {
    let (s, degree, poly) = match (&args.seq, &args.poly) {
        (Some(bits), _) => {
            let s: PeriodicSequence = bits.parse()?;
            let degree = LabeledSpectrum::degree_of_period(s.period());
            (s, degree, None)
        }
        (None, Some(p)) => {
            let spec = lfsr_spec(p, &args.init)?;
            let s = generate_m_sequence(&spec)?;
            (s, Some(spec.degree()), Some(spec.poly()))
        }
        (None, None) => unreachable!("clap requires --seq or --poly"),
    };
    let t = s.period();
    let validation = args.validation.mode();
    let id = poly.map_or_else(|| s.to_string(), |p| format!("{}@{}", p.to_hex(), args.init));

    let spectrum = match args.tau {
        Some(tau) => {
            if tau <= -(t as i64) || tau >= t as i64 {
                return Err(Error::TauOutOfRange { tau, period: t }.into());
            }
            let record = if validation.enabled_for(t) && s.reduce_tau(tau) != 0 {
                validated_autocorrelation(&s, tau)?
            } else {
                arithmetic_autocorrelation(&s, tau)
            };
            if format == Format::Text {
                return Ok(Outcome::ok(output::single_shift(&s, &record)));
            }
            CorrelationSpectrum {
                period: t,
                sequence_id: id,
                records: vec![record],
            }
        }
        None => spectrum(&s, id, validation)?,
    };
    let labeled = LabeledSpectrum {
        degree,
        poly,
        sequence: s.to_string(),
        spectrum,
    };
    Ok(Outcome::ok(output::spectra(&[labeled], format)?))
}

fn emit(path: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let argv = match config::merge_config(std::env::args_os().collect()) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker pool: {e}");
            return ExitCode::from(2);
        }
    };
    let result = pool.install(|| run(&cli));
    match result.and_then(|o| emit(cli.output.as_ref(), &o.text).map(|_| o.code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = e.downcast_ref::<Error>().map_or(2, exit_code);
            ExitCode::from(code)
        }
    }
}
