use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use frobenius_lab::lab::{paper_suite, parse_plan, run_plan, write_reports, ExperimentPlan, Format, RunOptions};

/// Default cache directory when `--cache` is absent.
const CACHE_ENV: &str = "FROBENIUS_LAB_CACHE";

#[derive(Parser)]
#[command(name = "lab", version, about = "Run experiment plans over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a plan file, or a built-in suite.
    Run {
        plan: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, env = CACHE_ENV)]
        cache: Option<PathBuf>,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Jsonlines,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Paper,
}

fn load(plan: Option<PathBuf>, suite: Option<Suite>) -> Result<Vec<ExperimentPlan>, String> {
    match (plan, suite) {
        (Some(_), Some(_)) => Err("give a plan file or --suite, not both".into()),
        (None, None) => Err("nothing to run: give a plan file or --suite paper".into()),
        (None, Some(Suite::Paper)) => paper_suite().map_err(|e| e.to_string()),
        (Some(path), None) => {
            let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            parse_plan(&text).map(|p| vec![p]).map_err(|e| format!("{}: {e}", path.display()))
        }
    }
}

fn main() -> ExitCode {
    let Command::Run { plan, format, out, jobs, cache, suite } = Cli::parse().command;
    let plans = match load(plan, suite) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let options = RunOptions { jobs, cache };
    let mut reports = Vec::new();
    for p in &plans {
        match run_plan(p, &options) {
            Ok(r) => reports.extend(r),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }
    let format = match format {
        FormatArg::Table => Format::Table,
        FormatArg::Jsonlines => Format::JsonLines,
    };
    let out = out.or_else(|| plans.iter().find_map(|p| p.output.clone()));
    if let Err(e) = write_reports(&reports, format, out.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if reports.iter().any(|r| r.is_assert_failure()) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
