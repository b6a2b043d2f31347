//! The `cubnf` command line: `check`, `cof`, `subst`, and `eq`.

pub mod args;
pub mod commands;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

use args::{Cli, Command};
use commands::CheckOptions;

/// Runs the command line and returns the process exit code: 0 when
/// everything passed, 1 on an error, 2 when `check` found only warnings.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match cli.command {
        Command::Check { files, strict, fuel, json } => {
            let report = commands::check_files(&files, CheckOptions { strict, fuel });
            if json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            report.exit_code()
        }
        Command::Cof { query, json } => finish(commands::cof_query(&query, json)),
        Command::Subst { file, name, dim, expr, fuel } => {
            finish(commands::subst_file(&file, &name, &dim, &expr, fuel))
        }
        Command::Eq { file, lhs, rhs } => finish(commands::eq_file(&file, &lhs, &rhs).map(|b| b.to_string())),
    }
}

fn finish(out: Result<String, commands::CliError>) -> i32 {
    match out {
        Ok(s) => {
            println!("{s}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}
