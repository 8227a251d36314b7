//! Problem files, reports and the `multipoint` command-line driver.

pub mod commands;
pub mod error;
pub mod json;
pub mod problem_file;
pub mod report;
pub mod samples;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use error::CliError;
pub use problem_file::{load_problem, parse_problem, problem_to_json, ProblemFile};

/// Run with the process streams; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_io(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Exit codes: 0 success, 1 invalid input or usage, 2 numerical failure.
pub fn run_with_io<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match commands::Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    stdout.write_all(text.as_bytes()).ok();
                    0
                }
                _ => {
                    stderr.write_all(text.as_bytes()).ok();
                    1
                }
            };
        }
    };
    match commands::execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            writeln!(stderr, "error: {e}").ok();
            e.exit_code()
        }
    }
}
