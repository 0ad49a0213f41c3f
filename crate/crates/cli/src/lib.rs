//! Command-line front end for `mgt-core`.

pub mod commands;
pub mod error;
pub mod matfile;
pub mod report;

use std::ffi::OsString;
use std::io::{IsTerminal, Write};

use clap::Parser;

use commands::{Cli, Output};
use error::CliError;

fn color_enabled() -> bool {
    std::env::var_os("NO_COLOR").is_none_or(|v| v.is_empty()) && std::io::stdout().is_terminal()
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (output, failure) = match commands::execute(&cli) {
        Ok(x) => x,
        Err(e) => return fail(&e),
    };
    let text = match output {
        Output::Matrix(x) => matfile::render(&x),
        Output::Report(r) if cli.json => {
            let mut s = serde_json::to_string_pretty(&r.to_json()).expect("report serializes");
            s.push('\n');
            s
        }
        Output::Report(r) => r.render_text(color_enabled()),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return fail(&CliError::Io("cannot write to stdout".into()));
    }
    match failure {
        Some(e) => fail(&e),
        None => 0,
    }
}

fn fail(e: &CliError) -> i32 {
    eprintln!("error: {e}");
    e.exit_code()
}
