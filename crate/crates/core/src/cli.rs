//! Command-line front end. `main.rs` only forwards to [`run`].

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::contingency::{parse_count_records, parse_counts, table_from_counts, Orientation};
use crate::report::{
    render_batch_machine, render_batch_text, render_pair_machine, render_pair_text,
    render_table_machine, render_table_text, score_batch, score_pair, Digits, TableReport,
};
use crate::stats::Convention;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INCOMMENSURATE: i32 = 3;
pub const EXIT_DEGENERATE: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "corefrel",
    version,
    about = "Coreference agreement: MUC recall/precision and kappa/alpha"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Machine,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score a response annotation against a target annotation.
    Score {
        /// Target coding (table columns).
        target: PathBuf,
        /// Response coding (table rows).
        response: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Decimal places for every rendered value (default: 3 for
        /// recall/precision, 2 for kappa).
        #[arg(long)]
        precision: Option<u32>,
    },
    /// Score every pair listed in a manifest (`doc_id<TAB>target<TAB>response`).
    Batch {
        manifest: PathBuf,
        /// Use the n − 1 divisor for σ instead of n.
        #[arg(long)]
        sample_stddev: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long, default_value_t = 2)]
        precision: u32,
    },
    /// Report on published link-table counts.
    Table {
        /// One table as `a,b,c,d`.
        #[arg(long, conflicts_with = "file", required_unless_present = "file")]
        counts: Option<String>,
        /// File of `a,b,c,d` records, one table per line.
        #[arg(long)]
        file: Option<PathBuf>,
        /// Name of the coding on the columns.
        #[arg(long, default_value = "target")]
        target_name: String,
        /// Name of the coding on the rows.
        #[arg(long, default_value = "response")]
        response_name: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long)]
        precision: Option<u32>,
    },
}

fn digits(precision: Option<u32>) -> Digits {
    precision.map(Digits::uniform).unwrap_or_default()
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_PARSE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    match cli.command {
        Command::Score {
            target,
            response,
            format,
            precision,
        } => match score_pair(&target, &response, digits(precision)) {
            Ok(report) => {
                let text = match format {
                    OutputFormat::Text => render_pair_text(&report),
                    OutputFormat::Machine => render_pair_machine(&report),
                };
                let _ = write!(out, "{text}");
                if report.degenerate_only() {
                    EXIT_DEGENERATE
                } else {
                    EXIT_OK
                }
            }
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                e.exit_code()
            }
        },
        Command::Batch {
            manifest,
            sample_stddev,
            format,
            precision,
        } => {
            let convention = if sample_stddev {
                Convention::Sample
            } else {
                Convention::Population
            };
            match score_batch(&manifest, convention, precision) {
                Ok(report) => {
                    let text = match format {
                        OutputFormat::Text => render_batch_text(&report),
                        OutputFormat::Machine => render_batch_machine(&report),
                    };
                    let _ = write!(out, "{text}");
                    if report.degenerate_only() {
                        EXIT_DEGENERATE
                    } else {
                        EXIT_OK
                    }
                }
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    e.exit_code()
                }
            }
        }
        Command::Table {
            counts,
            file,
            target_name,
            response_name,
            format,
            precision,
        } => {
            let orientation = Orientation::new(target_name, response_name);
            let tables = match (counts, file) {
                (Some(record), _) => parse_counts(&record)
                    .map_err(|reason| format!("--counts: {reason}"))
                    .and_then(|[a, b, c, d]| {
                        table_from_counts(a, b, c, d, orientation.clone())
                            .map(|t| vec![t])
                            .map_err(|e| format!("--counts: {e}"))
                    }),
                (None, Some(path)) => fs::read_to_string(&path)
                    .map_err(|e| format!("{}: {e}", path.display()))
                    .and_then(|text| {
                        parse_count_records(&text, &orientation)
                            .map_err(|e| format!("{}: {e}", path.display()))
                    }),
                (None, None) => unreachable!("clap requires one of --counts/--file"),
            };
            let tables = match tables {
                Ok(t) => t,
                Err(message) => {
                    let _ = writeln!(err, "error: {message}");
                    return EXIT_PARSE;
                }
            };
            let reports: Vec<TableReport> = tables
                .into_iter()
                .map(|t| TableReport::new(t, digits(precision)))
                .collect();
            for (i, report) in reports.iter().enumerate() {
                if i > 0 && matches!(format, OutputFormat::Text) {
                    let _ = writeln!(out);
                }
                let text = match format {
                    OutputFormat::Text => render_table_text(report),
                    OutputFormat::Machine => render_table_machine(report) + "\n",
                };
                let _ = write!(out, "{text}");
            }
            if reports.iter().all(TableReport::degenerate_only) {
                EXIT_DEGENERATE
            } else {
                EXIT_OK
            }
        }
    }
}
