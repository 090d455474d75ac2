//! `dualis` — batch verifier for dualizing-pair scenarios.
//!
//! `dualis run <files...>` parses each scenario file, runs its tasks in
//! order, and emits one report per task. `dualis check <file>` parses
//! and type-checks without running anything.
//!
//! Exit codes: 0 all tasks pass; 1 at least one task failed; 2 a task
//! or file errored; 3 usage error.

use clap::error::ErrorKind;
use dualis_cli::{emit, scenario, tasks};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "dualis", version, about = "Exact dualizing-pair scenario runner")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse scenario files and run every task.
    Run {
        /// Scenario files, run in order.
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::JsonLines)]
        format: Format,
        /// Stop at the first non-passing task.
        #[arg(long)]
        fail_fast: bool,
        /// Seed for the randomized probes of property tasks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Parse and type-check one scenario file without running tasks.
    Check {
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    JsonLines,
    Text,
}

fn scenario_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn load(path: &Path) -> Result<(scenario::Scenario, scenario::Compiled), String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: cannot read file: {e}", path.display()))?;
    let parsed = scenario::parse_scenario(&scenario_name(path), &text)
        .map_err(|d| format!("{}: {d}", path.display()))?;
    let compiled =
        scenario::compile(&parsed).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((parsed, compiled))
}

fn run(files: &[PathBuf], format: Format, fail_fast: bool, seed: u64) -> ExitCode {
    let mut reports = Vec::new();
    let mut file_error = false;
    'files: for path in files {
        let (parsed, compiled) = match load(path) {
            Ok(ok) => ok,
            Err(msg) => {
                eprintln!("error: {msg}");
                file_error = true;
                if fail_fast {
                    break 'files;
                }
                continue;
            }
        };
        for task in &parsed.tasks {
            let report = tasks::run_task(&parsed.name, &compiled, task, seed);
            if report.status == tasks::Status::Error {
                eprintln!(
                    "error: {}: task {}: {}",
                    parsed.name, report.task, report.note
                );
            }
            let stop = fail_fast && report.status != tasks::Status::Pass;
            reports.push(report);
            if stop {
                break 'files;
            }
        }
    }
    if !reports.is_empty() {
        let out = match format {
            Format::JsonLines => emit::emit_json_lines(&reports),
            Format::Text => emit::emit_text(&reports),
        };
        print!("{out}");
    }
    let any_error = file_error || reports.iter().any(|r| r.status == tasks::Status::Error);
    let any_fail = reports.iter().any(|r| r.status == tasks::Status::Fail);
    if any_error {
        ExitCode::from(2)
    } else if any_fail {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn check(file: &Path) -> ExitCode {
    match load(file) {
        Ok((parsed, _)) => {
            println!(
                "ok: {} ({} task{})",
                parsed.name,
                parsed.tasks.len(),
                if parsed.tasks.len() == 1 { "" } else { "s" }
            );
            ExitCode::SUCCESS
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(3);
        }
    };
    match cli.command {
        Command::Run {
            files,
            format,
            fail_fast,
            seed,
        } => run(&files, format, fail_fast, seed),
        Command::Check { file } => check(&file),
    }
}
