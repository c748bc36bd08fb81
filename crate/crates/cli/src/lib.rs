//! Command-line front end: argument parsing, the per-command tables and
//! their CSV/JSON rendering.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;

use std::time::{SystemTime, UNIX_EPOCH};

use clap::Parser;

pub use args::{Cli, Command, Common, Format};
pub use error::{CliError, CliResult};
pub use report::{Metadata, Table, Value};

/// Builds the table and renders it in the requested format.
pub fn render(cli: &Cli) -> CliResult<String> {
    let c = &cli.common;
    let table = commands::build(&cli.command, c)?;
    let inst = commands::instance(c)?;
    let meta = Metadata {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        command: cli.command.name().to_string(),
        n: c.n,
        eps: c.eps,
        gamma: inst.gamma(),
        marked: c.marked,
        algorithm: cli.command.algorithm_label(),
        samples: c.samples,
        timestamp: (!c.reproducible).then(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs())
        }),
    };
    Ok(table.render(c.format, &meta))
}

/// Renders and writes to `--output` or stdout.
pub fn run(cli: &Cli) -> CliResult<()> {
    let text = render(cli)?;
    match &cli.common.output {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

/// Parses `args` and runs, returning the process exit code. Help and
/// version requests exit 0; parse failures exit 1.
pub fn main_with_args<I, S>(args: I) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
