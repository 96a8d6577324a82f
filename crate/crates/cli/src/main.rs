mod args;
mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use fernkit_core::par::Parallelism;

use args::{Cli, Command, Format};
use report::{digest, render_text, CliError, CliResult, Outcome, Report};

fn input_path(command: &Command) -> Option<&std::path::Path> {
    match command {
        Command::Envelope(a) => a.input.as_deref(),
        Command::Tangent(a) => a.input.as_deref(),
        Command::Phimod(a) => a.input.as_deref(),
        Command::Weyl(_) | Command::Example4 | Command::Selftest(_) => None,
    }
}

fn dispatch(command: &Command, input: Option<&[u8]>, mode: Parallelism) -> CliResult<Outcome> {
    match command {
        Command::Envelope(a) => commands::envelope(a, input, mode),
        Command::Tangent(a) => commands::tangent(a, input, mode),
        Command::Weyl(a) => commands::weyl_cmd(a),
        Command::Phimod(a) => commands::phimod_cmd(a, input, mode),
        Command::Example4 => commands::example4(mode),
        Command::Selftest(a) => commands::selftest(a, mode),
    }
}

fn run(cli: &Cli) -> CliResult<(Report, String)> {
    let start = Instant::now();
    let mode = if cli.sequential { Parallelism::Sequential } else { Parallelism::Parallel };
    let input = match input_path(&cli.command) {
        Some(path) => Some(
            std::fs::read(path).map_err(|e| CliError::new("io", format!("{}: {e}", path.display())))?,
        ),
        None => None,
    };
    let mut config = serde_json::to_value(&cli.command)?;
    let subcommand = config
        .as_object_mut()
        .and_then(|m| m.remove("subcommand"))
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default();
    let outcome = dispatch(&cli.command, input.as_deref(), mode)?;
    let report = Report {
        schema_version: 1,
        inputs_digest: digest(&config, input.as_deref().unwrap_or_default()),
        subcommand,
        config,
        results: outcome.results,
        verdicts: outcome.verdicts,
        elapsed_ms: cli.timing.then(|| start.elapsed().as_millis()),
    };
    Ok((report, outcome.text))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, text)) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&report).expect("report serializes")),
                Format::Text => print!("{}", render_text(&report, &text)),
            }
            if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(err) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&err.to_json()).expect("error serializes")),
                Format::Text => eprintln!("{err}"),
            }
            ExitCode::from(2)
        }
    }
}
