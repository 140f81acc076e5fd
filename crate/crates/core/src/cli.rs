//! `euclid-kernel check <files...>`

use std::path::PathBuf;
use std::thread;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::checker::{check_theory_with, TheoryReport};
use crate::lang::{parse, Diagnostic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "euclid-kernel", version, about = "Check .euclid theories")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and verify theory files.
    Check(CliConfig),
}

#[derive(Debug, Clone, clap::Args)]
pub struct CliConfig {
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Print provenance trees and the production graph.
    #[arg(long)]
    pub trace: bool,
    /// Stop at the first failing proposition or file.
    #[arg(long)]
    pub fail_fast: bool,
    /// When false, any primitive declaration fails the run.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set, num_args = 1, require_equals = true)]
    pub allow_primitives: bool,
}

impl CliConfig {
    pub fn new(inputs: Vec<PathBuf>) -> Self {
        CliConfig {
            inputs,
            format: Format::Text,
            trace: false,
            fail_fast: false,
            allow_primitives: true,
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
enum FileOutcome {
    Checked {
        file: String,
        report: TheoryReport,
    },
    ParseError {
        file: String,
        diagnostics: Vec<Diagnostic>,
    },
    IoError {
        file: String,
        message: String,
    },
}

impl FileOutcome {
    /// 0 verified, 1 rejected, 2 unreadable or unparsable.
    fn code(&self, allow_primitives: bool) -> i32 {
        match self {
            FileOutcome::Checked { report, .. } => {
                let ok = report.rejected_count() == 0
                    && (allow_primitives || report.primitives.is_empty());
                i32::from(!ok)
            }
            _ => 2,
        }
    }

    fn render_text(&self, trace: bool, allow_primitives: bool) -> String {
        match self {
            FileOutcome::Checked { file, report } => {
                let mut s = format!("== {file}\n{}", report.render_text(trace));
                if !allow_primitives {
                    for p in &report.primitives {
                        s.push_str(&format!(
                            "error: primitive {} is not allowed in this run\n",
                            p.number
                        ));
                    }
                }
                s
            }
            FileOutcome::ParseError { file, diagnostics } => {
                let mut s = format!("== {file}\n");
                for d in diagnostics {
                    s.push_str(&format!("{file}:{d}\n"));
                }
                s
            }
            FileOutcome::IoError { file, message } => format!("== {file}\nerror: {message}\n"),
        }
    }
}

fn check_file(path: &PathBuf, fail_fast: bool) -> FileOutcome {
    let file = path.display().to_string();
    let source = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            return FileOutcome::IoError {
                file,
                message: e.to_string(),
            }
        }
    };
    match parse(&source) {
        Ok(theory) => FileOutcome::Checked {
            file,
            report: check_theory_with(&theory, fail_fast),
        },
        Err(diagnostics) => FileOutcome::ParseError { file, diagnostics },
    }
}

/// Check every input and render the reports. Files are checked
/// concurrently; output follows input order.
pub fn run(config: &CliConfig) -> (i32, String) {
    let outcomes: Vec<FileOutcome> = thread::scope(|s| {
        let handles: Vec<_> = config
            .inputs
            .iter()
            .map(|p| s.spawn(move || check_file(p, config.fail_fast)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("checker thread panicked"))
            .collect()
    });
    let mut shown = Vec::new();
    for o in outcomes {
        let failed = o.code(config.allow_primitives) != 0;
        shown.push(o);
        if failed && config.fail_fast {
            break;
        }
    }
    let code = shown
        .iter()
        .map(|o| o.code(config.allow_primitives))
        .max()
        .unwrap_or(0);
    let output = match config.format {
        Format::Text => shown
            .iter()
            .map(|o| o.render_text(config.trace, config.allow_primitives))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Structured => {
            let mut s = serde_json::to_string_pretty(&shown).expect("reports serialize");
            s.push('\n');
            s
        }
    };
    (code, output)
}

/// Entry point of the binary: parse `args` and run.
pub fn main_with_args<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(Cli {
            command: Command::Check(config),
        }) => run(&config),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            (code, e.to_string())
        }
    }
}
