//! `chset`: validates, constructs and cross-checks changeable-set documents.
//!
//! Exit status: 0 pass, 1 a check failed with a witness, 2 usage or I/O error.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use chset_core::doc::Kind;
use chset_core::multiverse::{CheckMode, DEFAULT_EXHAUSTIVE_LIMIT};

use commands::{ChronMode, Ctx, Generated, UsageError, VisibilityParts};
use report::Report;

#[derive(Parser)]
#[command(name = "chset", version, about = "Checks and constructions for changeable sets")]
struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Seed for sampled checks and generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Cap on frame sizes for exhaustive subset and partition scans.
    #[arg(long, global = true, env = "CHSET_LIMIT")]
    limit: Option<usize>,
    /// Check this many random subsets per frame combination instead of all of them.
    #[arg(long, global = true, value_name = "N")]
    sampled: Option<usize>,
    /// Write the constructed document here instead of embedding it in the report.
    #[arg(long, global = true, value_name = "PATH")]
    emit: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document against the axioms of its kind.
    Validate {
        file: PathBuf,
        /// Expected kind; also allows a bare body without the document wrapper.
        #[arg(long, value_parser = parse_kind)]
        kind: Option<Kind>,
    },
    /// Build a time on an oriented set.
    Chronologize {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ChronMode::Any)]
        mode: ChronMode,
        /// Number of moments for the trivial time.
        #[arg(long, default_value_t = 2)]
        moments: usize,
    },
    /// Report the predicates of a simultaneity and optionally build its internal time.
    Simultaneity {
        oriented_set: PathBuf,
        simultaneity: PathBuf,
        #[arg(long)]
        internal_time: bool,
    },
    /// List the fate lines of a basic changeable set.
    FateLines {
        file: PathBuf,
        /// Also rebuild the structure from its fate lines and compare.
        #[arg(long)]
        roundtrip: bool,
    },
    /// Visibility grades, classes and the composition criterion of a changeable set.
    Visibility {
        file: PathBuf,
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        classes: bool,
        #[arg(long)]
        criterion: bool,
    },
    /// Apply a transforming map to a basic changeable set.
    Image { bcs: PathBuf, map: PathBuf },
    /// Brute-force searches that cross-check the fast algorithms.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Search every small time for a monotone one.
    MonotoneChron {
        file: PathBuf,
        #[arg(long, default_value_t = 5)]
        scale_bound: usize,
    },
    /// Enumerate strictly monotone generating times and compare with the internal time.
    InternalTime {
        oriented_set: PathBuf,
        simultaneity: PathBuf,
    },
    /// Recompute every visibility grade from the definitions.
    Visibility { file: PathBuf },
    /// Emit seeded random documents, one per line.
    Generate {
        #[arg(long, value_parser = parse_kind)]
        kind: Kind,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_elems: usize,
    },
}

fn parse_kind(s: &str) -> Result<Kind, String> {
    match s {
        "cset" => Ok(Kind::ChangeableSet),
        "os" => Ok(Kind::OrientedSet),
        _ => s.parse().map_err(|_| {
            let names: Vec<&str> = Kind::ALL.iter().map(|k| k.as_str()).collect();
            format!("expected one of {}", names.join(", "))
        }),
    }
}

fn run(cli: &Cli) -> Result<Option<Report>, UsageError> {
    let limit = cli.limit.unwrap_or(DEFAULT_EXHAUSTIVE_LIMIT);
    let mode = match cli.sampled {
        Some(n) => CheckMode::Sampled { seed: cli.seed, n },
        None => CheckMode::Exhaustive { limit },
    };
    let ctx = Ctx {
        mode,
        limit,
        emit: cli.emit.clone(),
    };
    let report = match &cli.command {
        Command::Validate { file, kind } => commands::validate(&ctx, file, *kind)?,
        Command::Chronologize { file, mode, moments } => commands::chronologize(&ctx, file, *mode, *moments)?,
        Command::Simultaneity {
            oriented_set,
            simultaneity,
            internal_time,
        } => commands::simultaneity(&ctx, oriented_set, simultaneity, *internal_time)?,
        Command::FateLines { file, roundtrip } => commands::fate_lines(&ctx, file, *roundtrip)?,
        Command::Visibility {
            file,
            matrix,
            classes,
            criterion,
        } => commands::visibility(
            &ctx,
            file,
            VisibilityParts {
                matrix: *matrix,
                classes: *classes,
                criterion: *criterion,
            },
        )?,
        Command::Image { bcs, map } => commands::image(&ctx, bcs, map)?,
        Command::Oracle(OracleCommand::MonotoneChron { file, scale_bound }) => {
            commands::oracle_monotone(&ctx, file, *scale_bound)?
        }
        Command::Oracle(OracleCommand::InternalTime {
            oriented_set,
            simultaneity,
        }) => commands::oracle_internal_time(&ctx, oriented_set, simultaneity)?,
        Command::Oracle(OracleCommand::Visibility { file }) => commands::oracle_visibility(&ctx, file)?,
        Command::Oracle(OracleCommand::Generate { kind, count, max_elems }) => {
            match commands::oracle_generate(&ctx, cli.seed, *kind, *count, *max_elems)? {
                Generated::Report(r) => r,
                Generated::Lines(lines) => {
                    emit_stdout(&lines);
                    return Ok(None);
                }
            }
        }
    };
    Ok(Some(report))
}

/// A closed pipe downstream is not an error worth a panic.
fn emit_stdout(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(r)) => {
            match cli.format {
                Format::Json => emit_stdout(&format!("{:#}\n", r.to_json())),
                Format::Text => emit_stdout(&r.to_text()),
            }
            ExitCode::from(r.verdict.exit_code())
        }
        Err(UsageError(msg)) => {
            eprintln!("chset: {msg}");
            ExitCode::from(2)
        }
    }
}
