//! Command-line front end for `tcbound`: problem files, builtin examples and
//! the `tcbound` binary's subcommands.

pub mod builtins;
pub mod commands;
pub mod error;
pub mod schema;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use tcbound::group::SubgroupMode;
use tcbound::FieldSpec;

use commands::{Overrides, Source, SubgroupChoice};
pub use error::{CliError, EXIT_CAP, EXIT_INCONSISTENT, EXIT_INVALID, EXIT_OK};
pub use schema::{AssociatedDecl, FileConfig, ProblemFile, ProblemRef};

#[derive(Debug, Parser)]
#[command(
    name = "tcbound",
    version,
    about = "Bounds on LS category and (equivariant) topological complexity"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Subgroups {
    All,
    Conjugacy,
}

impl From<Subgroups> for SubgroupMode {
    fn from(s: Subgroups) -> Self {
        match s {
            Subgroups::All => SubgroupMode::All,
            Subgroups::Conjugacy => SubgroupMode::UpToConjugacy,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the full pipeline and print the bound report.
    Analyze {
        /// Problem file or builtin example name.
        problem: String,
        /// Comma-separated coefficient fields, e.g. F2,F3,Q.
        #[arg(long, value_delimiter = ',')]
        fields: Option<Vec<FieldSpec>>,
        /// Longest zero-divisor product searched (default 2·dim).
        #[arg(long)]
        depth_cap: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum)]
        subgroups: Option<Subgroups>,
        /// Largest group order accepted.
        #[arg(long)]
        group_cap: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Also write the JSON report here.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Print a builtin problem file.
    Examples {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        /// Write to this file instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Betti numbers of the problem's complex.
    Betti {
        problem: String,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
    },
    /// The fixed subcomplex of a subgroup.
    Fixed {
        problem: String,
        /// full, trivial, or H<i> (index into the subgroup catalog).
        #[arg(long, default_value = "full")]
        subgroup: SubgroupChoice,
        #[arg(long, default_value = "Q")]
        field: FieldSpec,
        #[arg(long, value_enum, default_value = "conjugacy")]
        subgroups: Subgroups,
    },
    /// Zero-divisor and cup-length certificates.
    Cupfind {
        problem: String,
        #[arg(long, default_value = "F2")]
        field: FieldSpec,
        #[arg(long)]
        depth_cap: Option<usize>,
    },
}

/// Parses `args` (including the program name) and runs the command, returning the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io {
        path: "<stdout>".to_string(),
        message: e.to_string(),
    })
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Analyze {
            problem,
            fields,
            depth_cap,
            seed,
            subgroups,
            group_cap,
            format,
            output,
        } => {
            let src = Source::resolve(&problem)?;
            let o = Overrides {
                fields,
                depth_cap,
                seed,
                subgroups: subgroups.map(Into::into),
                group_cap,
            };
            let report = commands::report(&src, &o)?;
            let json = commands::report_json(&report);
            match format {
                Format::Text => write_out(out, &report.to_text())?,
                Format::Json => write_out(out, &json)?,
            }
            if let Some(path) = output {
                write_file(&path, &json)?;
            }
            if !report.consistent {
                let first = report
                    .inconsistencies
                    .first()
                    .map(|i| i.quantity.clone())
                    .unwrap_or_default();
                return Err(CliError::Inconsistent(first));
            }
            Ok(EXIT_OK)
        }
        Command::Examples { name, list, output } => {
            let text = match (name, list) {
                (_, true) => builtins::names().join("\n") + "\n",
                (Some(n), false) => match builtins::file(&n) {
                    Some(f) => f.to_json(),
                    None => {
                        return Err(CliError::UnknownExample {
                            name: n,
                            available: builtins::names(),
                        })
                    }
                },
                (None, false) => {
                    return Err(CliError::Usage(
                        "give an example name or --list".to_string(),
                    ))
                }
            };
            match output {
                Some(path) => write_file(&path, &text)?,
                None => write_out(out, &text)?,
            }
            Ok(EXIT_OK)
        }
        Command::Betti { problem, field } => {
            write_out(out, &commands::betti(&Source::resolve(&problem)?, field)?)?;
            Ok(EXIT_OK)
        }
        Command::Fixed {
            problem,
            subgroup,
            field,
            subgroups,
        } => {
            let text = commands::fixed(
                &Source::resolve(&problem)?,
                &subgroup,
                field,
                subgroups.into(),
            )?;
            write_out(out, &text)?;
            Ok(EXIT_OK)
        }
        Command::Cupfind {
            problem,
            field,
            depth_cap,
        } => {
            write_out(
                out,
                &commands::cupfind(&Source::resolve(&problem)?, field, depth_cap)?,
            )?;
            Ok(EXIT_OK)
        }
    }
}
