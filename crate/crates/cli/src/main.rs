use std::process::ExitCode;

use clap::Parser;
use monogamy_cli::{run, Args, RunConfig};

fn main() -> ExitCode {
    let result = RunConfig::from_args(Args::parse()).and_then(|config| run(&config));
    match result {
        Ok(summary) => {
            for line in &summary.lines {
                eprintln!("{line}");
            }
            if summary.violations > 0 {
                eprintln!("{} violation(s) in {} rows", summary.violations, summary.rows);
            }
            ExitCode::from(summary.exit_code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
