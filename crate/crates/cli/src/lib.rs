//! Command-line front end for `grascurve`.

pub mod cli;
pub mod commands;
pub mod error;
pub mod io;
pub mod verify;

use clap::error::ErrorKind;
use clap::Parser;
use serde_json::json;

pub use error::{CliError, CliResult};

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_output(e: &CliError, stderr: String) -> RunOutput {
    let obj = json!({"error": {"kind": e.kind(), "message": e.to_string()}});
    RunOutput { code: 2, stdout: io::render_json(&obj), stderr }
}

/// Parse arguments and run one command. Exit codes: 0 success, 1 a check
/// failed, 2 usage or input error.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let parsed = match cli::Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    RunOutput { code: 0, stdout: text, stderr: String::new() }
                }
                _ => {
                    // Everything before the usage hint, on one line.
                    let head = text.split("\n\nUsage:").next().unwrap_or_default();
                    let msg = head.trim_start_matches("error: ").split_whitespace().collect::<Vec<_>>().join(" ");
                    error_output(&CliError::Usage(msg), text)
                }
            };
        }
    };
    let g = &parsed.global;
    let exec = || commands::run(&parsed.command, g);
    let result = match g.jobs {
        Some(0) => Err(CliError::Usage("--jobs must be at least 1".into())),
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(exec),
            Err(e) => Err(CliError::Usage(format!("cannot start {n} worker threads: {e}"))),
        },
        None => exec(),
    };
    match result {
        Ok(out) => {
            let stdout = if g.pretty { io::render_table(&out.value) } else { io::render_json(&out.value) };
            RunOutput { code: if out.ok { 0 } else { 1 }, stdout, stderr: String::new() }
        }
        Err(e) => error_output(&e, format!("error: {e}\n")),
    }
}
