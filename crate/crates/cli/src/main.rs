use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use nearval::colored::colored_bound;
use nearval::fuzz::{self, FuzzConfig};
use nearval::general::{ceil_log2, general_bound};
use nearval::{Container, Error, NearestValues, QueryKind, Scheme, ValueArray};

/// Encode arrays so that nearest smaller/larger value queries can be answered
/// without the array.
#[derive(Debug, Parser)]
#[command(name = "nearval", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Encode a whitespace-separated integer array into a container file.
    Encode {
        #[arg(long, value_enum)]
        scheme: SchemeArg,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long = "out")]
        output: PathBuf,
    },
    /// Decode a container and verify that it re-encodes identically.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        /// Print the reconstructed trees.
        #[arg(long)]
        dump_trees: bool,
    },
    /// Answer one query from a container.
    Query {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        index: usize,
    },
    /// Print the bit budget of a container.
    Stats {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run randomized or exhaustive self-checks.
    Fuzz {
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 200)]
        max_n: usize,
        #[arg(long, default_value_t = 5)]
        alphabet: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Check every array of length 1..=max-n over the alphabet.
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SchemeArg {
    Joint,
    Colored,
    General,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Joint => Scheme::Joint,
            SchemeArg::Colored => Scheme::Colored,
            SchemeArg::General => Scheme::General,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Psv,
    Plv,
    Nsv,
    Nlv,
}

impl From<KindArg> for QueryKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Psv => QueryKind::Psv,
            KindArg::Plv => QueryKind::Plv,
            KindArg::Nsv => QueryKind::Nsv,
            KindArg::Nlv => QueryKind::Nlv,
        }
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_CORRUPT: u8 = 4;
const EXIT_FUZZ: u8 = 5;

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Parse { .. } | Error::EmptyArray) => EXIT_PARSE,
        Some(
            Error::Precondition { .. }
            | Error::IndexOutOfRange { .. }
            | Error::InvalidArgument(_)
            | Error::Unsupported(_),
        ) => EXIT_PRECONDITION,
        Some(Error::Corrupt(_)) => EXIT_CORRUPT,
        None => EXIT_USAGE,
    }
}

fn stats_line(c: &Container) -> String {
    let n = c.n();
    let bits = c.payload_bits();
    let per = bits as f64 / n as f64;
    match c.scheme() {
        Scheme::Joint => {
            format!("scheme=joint n={n} payload={bits} bits (3n-1={}) bits/n={per:.4}", 3 * n - 1)
        }
        Scheme::Colored => format!(
            "scheme=colored n={n} payload={bits} bits, bound {} bits/n={per:.4} (2+log3={:.4})",
            colored_bound(n).ceil() as u64,
            2.0 + 3f64.log2()
        ),
        Scheme::General => format!(
            "scheme=general n={n} payload={bits} bits, bound {} (+{} slack) bits/n={per:.4} (log13={:.4})",
            general_bound(n).ceil() as u64,
            2 * ceil_log2(n) + 96,
            13f64.log2()
        ),
    }
}

fn read_container(path: &Path) -> anyhow::Result<Container> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    Ok(Container::from_bytes(&bytes)?)
}

fn run(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::Encode { scheme, input, output } => {
            let text = fs::read_to_string(&input).with_context(|| format!("cannot read {}", input.display()))?;
            let a = ValueArray::parse(&text)?;
            let c = Container::encode_array(&a, scheme.into())?;
            fs::write(&output, c.to_bytes()).with_context(|| format!("cannot write {}", output.display()))?;
            println!("{}", stats_line(&c));
        }
        Command::Decode { input, dump_trees } => {
            let c = read_container(&input)?;
            let d = c.decode()?;
            let again = d.encode()?;
            if again.to_bytes() != c.to_bytes() {
                return Err(Error::Corrupt("decoded trees re-encode to different bytes".into()).into());
            }
            println!("scheme={} n={} payload={} bits, re-encode identical", c.scheme(), c.n(), c.payload_bits());
            if dump_trees {
                print!("{}", d.dump_trees());
            }
        }
        Command::Query { input, kind, index } => {
            let d = read_container(&input)?.decode()?;
            println!("{}", d.query(kind.into(), index)?);
        }
        Command::Stats { input } => {
            println!("{}", stats_line(&read_container(&input)?));
        }
        Command::Fuzz { count, max_n, alphabet, seed, exhaustive } => {
            if max_n == 0 || alphabet == 0 {
                return Err(Error::InvalidArgument("max-n and alphabet must be positive".into()).into());
            }
            let report = fuzz::run(&FuzzConfig { count, max_n, alphabet, seed, exhaustive });
            println!("{}", report.to_string().trim_end());
            if !report.passed() {
                return Ok(EXIT_FUZZ);
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
