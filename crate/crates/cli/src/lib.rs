//! Front end for `unijac-core`: argument parsing, parameter sweeps, JSON and
//! CSV output, and a seeded randomized cross-check suite.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;
pub mod records;
pub mod verify;

use args::Cli;
use error::CliError;

/// Runs the parsed command and writes its output. Returns the exit status.
pub fn run(cli: &Cli, argv: &[String]) -> Result<u8, CliError> {
    let items = commands::execute(&cli.command, &cli.common)?;
    let text = output::render(&items, cli.common.sweep, cli.common.format)?;
    if let Some(path) = &cli.common.log {
        output::append_log(path, commands::name(&cli.command), argv, &items)?;
    }
    let check_failed = items.iter().flatten().any(|p| p.check_failed);
    if !cli.common.sweep {
        if let Some(Err(_)) = items.first() {
            let e = items
                .into_iter()
                .next()
                .and_then(Result::err)
                .expect("checked above");
            return Err(e);
        }
    }
    output::write_output(&text, cli.common.output.as_deref())?;
    let mut code = 0;
    for e in items.iter().filter_map(|i| i.as_ref().err()) {
        eprintln!("{}", serde_json::to_string(&e.to_json())?);
        code = 1;
    }
    if check_failed {
        code = 3;
    }
    Ok(code)
}
