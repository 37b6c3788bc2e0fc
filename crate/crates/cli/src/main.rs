use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bpa_cli::commands::{self, EnumKind, Format, SeriesArgs, SeriesKind};
use bpa_cli::exit_code;
use bpa_core::SequenceKind;

/// Barred preferential arrangements: exact counts, enumeration, identity
/// checks and certified series evaluation.
#[derive(Parser)]
#[command(name = "bpa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value of r(m,l) or s(m,l) by one formula, or by every formula with `all`.
    Compute {
        #[arg(value_parser = parse_kind)]
        kind: SequenceKind,
        m: usize,
        l: usize,
        /// recurrence, stirling-first, blocks, egf, from-s, inclusion-exclusion, first-blocks, or all
        #[arg(default_value = "recurrence")]
        method: String,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        /// Flat-file cache to read and update.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Grid of values for m = 0..=M, l = 0..=L.
    Table {
        #[arg(value_parser = parse_kind)]
        kind: SequenceKind,
        m_max: usize,
        l_max: usize,
        /// Output format; `--format` is accepted too.
        #[arg(value_enum)]
        format_arg: Option<Format>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// List arrangements in canonical order: `pa L`, `bpa M L` or `special M L`.
    Enumerate {
        #[arg(value_enum)]
        kind: EnumKind,
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<usize>,
        #[arg(long)]
        limit: Option<u64>,
        /// List even when more than a million arrangements are predicted.
        #[arg(long)]
        force: bool,
    },
    /// Run the identity checks; exit status 1 if any fails.
    Verify {
        m_max: usize,
        l_max: usize,
        /// Also compare brute-force enumeration counts.
        #[arg(long)]
        oracle: bool,
        /// Also run exhaustive bijection round trips.
        #[arg(long)]
        bijections: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Evaluate a series for r_l (one argument) or r(m,l) (two arguments).
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        #[arg(num_args = 1..=2, required = true)]
        args: Vec<usize>,
        /// Pair terms summed by the convergent series.
        #[arg(long, default_value_t = 20)]
        terms: usize,
        /// Working precision in bits.
        #[arg(long, default_value_t = bpa_core::asymptotics::DEFAULT_PRECISION_BITS)]
        bits: u32,
        /// Target error for the gross series.
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        /// Print every summed term.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Write an OEIS b-file with a(n) = kind(m, n) for n = 0..=L.
    Bfile {
        #[arg(value_parser = parse_kind)]
        kind: SequenceKind,
        m: usize,
        l_max: usize,
        path: PathBuf,
    },
}

fn parse_kind(s: &str) -> Result<SequenceKind, String> {
    s.parse().map_err(|e: bpa_core::Error| e.to_string())
}

fn run(cli: Cli) -> anyhow::Result<commands::Outcome> {
    match cli.command {
        Command::Compute { kind, m, l, method, format, cache } => {
            commands::compute(kind, m, l, &method, format, cache.as_deref())
        }
        Command::Table { kind, m_max, l_max, format_arg, format } => {
            commands::table(kind, m_max, l_max, format.or(format_arg).unwrap_or(Format::Plain))
        }
        Command::Enumerate { kind, args, limit, force } => commands::enumerate(kind, &args, limit, force),
        Command::Verify { m_max, l_max, oracle, bijections, format } => {
            commands::verify(m_max, l_max, oracle, bijections, format)
        }
        Command::Series { kind, args, terms, bits, eps, trace, format } => {
            let (m, l) = match args[..] {
                [l] => (None, l),
                [m, l] => (Some(m), l),
                _ => unreachable!("clap enforces one or two arguments"),
            };
            commands::series(&SeriesArgs { kind, m, l, terms, bits, eps, trace, format })
        }
        Command::Bfile { kind, m, l_max, path } => commands::bfile(kind, m, l_max, &path),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = stdout.write_all(outcome.output.as_bytes());
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
